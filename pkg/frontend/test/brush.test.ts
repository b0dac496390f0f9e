import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { brushToSelection, isBrushable, pointsInRect } from '../src/brush.js';
import type { ScatterSeries } from '../src/types.js';
import { scatterPayload, tablePayload } from './fixtures.js';

function series(): ScatterSeries {
  return scatterPayload().series as unknown as ScatterSeries;
}

// brute-force oracle over every point
function oracle(s: ScatterSeries, x0: number, x1: number, y0: number, y1: number): string[] {
  const out: string[] = [];
  s.ids.forEach((id, i) => {
    if (s.x[i] >= x0 && s.x[i] <= x1 && s.y[i] >= y0 && s.y[i] <= y1) out.push(id);
  });
  return out;
}

describe('pointsInRect', () => {
  it('matches the point-in-rect oracle on random rectangles', () => {
    const s = series();
    let seed = 42;
    const rand = () => {
      seed = (seed * 1103515245 + 12345) % 2 ** 31;
      return (seed / 2 ** 31) * 6 - 3;
    };
    for (let trial = 0; trial < 200; trial++) {
      const [x0, x1, y0, y1] = [rand(), rand(), rand(), rand()];
      const got = pointsInRect(s, { x0, x1, y0, y1 });
      expect(got).toEqual(
        oracle(s, Math.min(x0, x1), Math.max(x0, x1), Math.min(y0, y1), Math.max(y0, y1)),
      );
    }
  });

  it('selects exactly the covered points', () => {
    // s1=(-1,2) s2=(0,1) s3=(1,0) s4=(2,-1); rect covers s1 and s3 only
    const picked = pointsInRect(series(), { x0: -1.5, x1: 1.5, y0: -0.5, y1: 2.5 });
    expect(picked).toEqual(['s1', 's2', 's3']);
    expect(pointsInRect(series(), { x0: -1.1, x1: -0.9, y0: 1.9, y1: 2.1 })).toEqual(['s1']);
  });

  it('returns [] for an empty rectangle', () => {
    expect(pointsInRect(series(), { x0: 9, x1: 10, y0: 9, y1: 10 })).toEqual([]);
  });
});

describe('brushToSelection', () => {
  const captureClient = (posts: unknown[]) =>
    new ApiClient('http://test', async (input, init) => {
      posts.push({ input, body: init?.body && JSON.parse(init.body as string) });
      return new Response(JSON.stringify({ seq: 1, panels: [] }), {
        headers: { 'content-type': 'application/json' },
      });
    });

  it('posts one column selection with the covered ids', async () => {
    const posts: any[] = [];
    const res = await brushToSelection(captureClient(posts), scatterPayload(), {
      x0: -1.5,
      x1: 0.5,
      y0: 0.5,
      y1: 2.5,
    });
    expect(res).not.toBeNull();
    expect(posts).toHaveLength(1);
    expect(posts[0].input).toBe('http://test/api/selection');
    expect(posts[0].body).toEqual({ origin: 'p-scatter', axis: 'columns', ids: ['s1', 's2'] });
  });

  it('posts an empty id list for an empty brush (clears the selection)', async () => {
    const posts: any[] = [];
    await brushToSelection(captureClient(posts), scatterPayload(), { x0: 8, x1: 9, y0: 8, y1: 9 });
    expect(posts[0].body.ids).toEqual([]);
  });

  it('is disabled on non-scatter panels: no request leaves the client', async () => {
    const posts: unknown[] = [];
    expect(isBrushable('table')).toBe(false);
    const res = await brushToSelection(captureClient(posts), tablePayload(), {
      x0: 0,
      x1: 1,
      y0: 0,
      y1: 1,
    });
    expect(res).toBeNull();
    expect(posts).toHaveLength(0);
  });

  it('propagates network failure without swallowing it', async () => {
    const failing = new ApiClient('http://test', async () => {
      throw new TypeError('fetch failed');
    });
    await expect(
      brushToSelection(failing, scatterPayload(), { x0: 0, x1: 1, y0: 0, y1: 1 }),
    ).rejects.toThrow('fetch failed');
  });
});
