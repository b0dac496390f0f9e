"""treescope: engine for interactive exploration of hierarchical multi-table data."""

from .container import (Assay, AnnotationTable, Column, HierarchicalExperiment, LinkEntry,
                        LinkMap, ReducedDim, add_reduced_dim, build_experiment, subset)
from .ingest import Bundle, BundleManifest, load_bundle, parse_delimited_matrix
from .ordination import DistanceMatrix, bray_curtis, euclidean, pca, pcoa, rda, top_loadings
from .panels import (PanelState, PlotPayload, SelectionEvent, SessionLayout, apply_selection,
                     available_panels, compute_payload, default_layout, select_tree_node)
from .provenance import Command, Script, export_script, replay
from .session import Session
from .transforms import (TransformSpec, agglomerate_by_rank, clr, log_transform,
                         relative_abundance, top_features)
from .tree import Tree, TreeNode, parse_newick, serialize_newick

__version__ = "0.1.0"
