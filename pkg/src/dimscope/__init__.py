"""dimscope: interactive decomposition of high-dimensional tables into
low-dimensional parallel-coordinate plots.

Numeric dimensions are compared by Spearman-correlation distance; a
thresholded dimension graph yields maximal cliques that become small PCPs,
or association rules between categorical labels and binned value ranges
pick the axes instead. A session server exposes the whole pipeline over
HTTP/JSON for a browser UI; thresholds are steered live by the analyst.
"""

from .cluster import ClusterAssignment, kmeans
from .dataset import (
    BinningSpec,
    CategoricalDimMeta,
    Dataset,
    NumericDimMeta,
    bin_index,
    load_csv,
    normalize_value,
    write_csv,
)
from .errors import DimscopeError
from .graph import (
    DimensionGraph,
    GraphParams,
    Panel,
    build_graph,
    maximal_cliques,
    merge_panels,
    sample_dimensions,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .mds import Layout2D, classical_mds
from .metrics import (
    DistanceMatrix,
    DistanceMetric,
    distance_matrix,
    load_distance_cache,
    rank_transform,
    save_distance_cache,
    spearman,
)
from .ordering import AxisOrder, order_axes
from .rules import Rule, RuleDirection, RuleSet, RuleThresholds, label_coloring, mine_rules
from .session import Mode, Session, SessionConfig, apply_event
from .view import build_view

__version__ = "0.1.0"

__all__ = [
    "AxisOrder",
    "BinningSpec",
    "CategoricalDimMeta",
    "ClusterAssignment",
    "Dataset",
    "DimensionGraph",
    "DimscopeError",
    "DistanceMatrix",
    "DistanceMetric",
    "GraphParams",
    "KERNEL_BACKEND",
    "Layout2D",
    "Mode",
    "NumericDimMeta",
    "Panel",
    "Rule",
    "RuleDirection",
    "RuleSet",
    "RuleThresholds",
    "Session",
    "SessionConfig",
    "apply_event",
    "bin_index",
    "build_graph",
    "build_view",
    "classical_mds",
    "distance_matrix",
    "kmeans",
    "label_coloring",
    "load_csv",
    "load_distance_cache",
    "maximal_cliques",
    "merge_panels",
    "mine_rules",
    "normalize_value",
    "order_axes",
    "rank_transform",
    "sample_dimensions",
    "save_distance_cache",
    "spearman",
    "write_csv",
    "__version__",
]
