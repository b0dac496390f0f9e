/** Hand-built payloads in the server's wire shapes for renderer tests. */

import type { Payload } from '../src/types.js';

function payload(panel: string, kind: string, series: object, legend: string[] = [], axis = {}): Payload {
  return {
    panel,
    kind,
    series: series as Record<string, unknown>,
    legend,
    axis,
    provenance_id: 'f'.repeat(16),
  };
}

export function barsPayload(nSamples = 27): Payload {
  const samples = Array.from({ length: nSamples }, (_, i) => `s${i + 1}`);
  const features = ['taxA', 'taxB', 'Other'];
  const values = [
    samples.map(() => 0.5),
    samples.map(() => 0.3),
    samples.map(() => 0.2),
  ];
  return payload('p-bars', 'bars', { samples, features, values }, features, {
    y_label: 'relative abundance',
  });
}

export function densityPayload(): Payload {
  const x = Array.from({ length: 128 }, (_, i) => i / 127);
  return payload(
    'p-density',
    'density',
    {
      curves: [
        { feature: 'taxA', x, y: x.map((v) => Math.exp(-v)), bandwidth: 0.05 },
        { feature: 'taxB', x, y: x.map((v) => v), bandwidth: 0.04 },
      ],
    },
    ['taxA', 'taxB'],
    { x_label: 'relative abundance', y_label: 'density' },
  );
}

export function heatmapPayload(): Payload {
  return payload('p-heat', 'heatmap', {
    row_ids: ['f1', 'f2', 'f3'],
    col_ids: ['s1', 's2'],
    values: [
      [0, 1],
      [2, 3],
      [4, 5],
    ],
    transform: { kind: 'clr', pseudocount: 1 },
  });
}

export function scatterPayload(): Payload {
  return payload(
    'p-scatter',
    'scatter',
    {
      ids: ['s1', 's2', 's3', 's4'],
      x: [-1, 0, 1, 2],
      y: [2, 1, 0, -1],
      color: ['a', 'b', 'a', 'b'],
      color_by: 'group',
      reduced_dim: 'pca',
    },
    [],
    { x_label: 'Axis 1 (40.0%)', y_label: 'Axis 2 (20.0%)' },
  );
}

export function biplotPayload(): Payload {
  const base = scatterPayload();
  return {
    ...base,
    panel: 'p-biplot',
    kind: 'biplot',
    series: {
      ...base.series,
      reduced_dim: 'rda',
      arrows: [
        { name: 'group', x: 0.8, y: 0.1 },
        { name: 'depth', x: -0.2, y: 0.7 },
      ],
    },
    legend: ['group', 'depth'],
  };
}

export function rankedBarsPayload(): Payload {
  return payload(
    'p-load',
    'ranked-bars',
    { ids: ['f9', 'f2', 'f5'], values: [0.9, -0.7, 0.3], reduced_dim: 'pca', component: 1 },
    [],
    { x_label: 'loading on axis 1' },
  );
}

export function treePayload(): Payload {
  return payload('p-tree', 'tree', {
    nodes: [
      { id: 0, label: null, parent: null, x: 0, y: 1.5, is_leaf: false },
      { id: 1, label: 'leafA', parent: 0, x: 0.7, y: 1, is_leaf: true },
      { id: 2, label: 'leafB', parent: 0, x: 1.3, y: 2, is_leaf: true },
    ],
    mode: 'phylogram',
    tips: [
      { id: 'fA', node_id: 1 },
      { id: 'fB', node_id: 2 },
    ],
    show_labels: true,
  });
}

export function tablePayload(): Payload {
  return payload('p-table', 'table', {
    columns: ['id', 'phylum'],
    rows: [
      { id: 'f1', phylum: 'P1' },
      { id: 'f2', phylum: null },
    ],
    total: 42,
    page: 1,
    page_size: 2,
  });
}

export function unknownKindPayload(): Payload {
  return payload('p-sankey', 'sankey', { links: [] });
}
