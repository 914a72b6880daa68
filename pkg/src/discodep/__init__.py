"""discodep: discourse annotations to dependency graphs, plus distance metrics.

PDTB 3.0 relation files convert into local dependency forests; RST-DT
constituency trees convert into rooted dependency trees. Both feed the
same dependency-distance statistics (MDD, SD, Pearson correlation).
"""

__version__ = "0.1.0"

from .align import map_span_set, read_segmentation, resolve_span_set
from .formats import read_dep, read_metrics, write_correlation, write_dep, write_metrics
from .metrics import (
    CorrelationResult,
    MetricsRecord,
    corpus_mean,
    mdd_local,
    mdd_rooted,
    metrics_record,
    pearson,
    sd_distances,
)
from .model import (
    DependencyArc,
    DependencyGraph,
    Diagnostic,
    Document,
    GraphFlavor,
    Nuclearity,
    PdtbRelation,
    RelationKind,
    RstChild,
    RstInternal,
    RstLeaf,
    RstTree,
    SenseTag,
    Span,
    validate_graph,
)
from .pdtb import ColumnMap, parse_relation_file, parse_relation_line
from .pdtb2dep import convert_pdtb, head_of_constituent, sense_symmetry
from .rst import edu_inventory_of, parse_dis, parse_dis_file, pretty_print
from .rst2dep import binarize, hirao_convert, li_convert, tree_heads

__all__ = [
    "ColumnMap",
    "CorrelationResult",
    "DependencyArc",
    "DependencyGraph",
    "Diagnostic",
    "Document",
    "GraphFlavor",
    "MetricsRecord",
    "Nuclearity",
    "PdtbRelation",
    "RelationKind",
    "RstChild",
    "RstInternal",
    "RstLeaf",
    "RstTree",
    "SenseTag",
    "Span",
    "binarize",
    "convert_pdtb",
    "corpus_mean",
    "edu_inventory_of",
    "head_of_constituent",
    "hirao_convert",
    "li_convert",
    "map_span_set",
    "mdd_local",
    "mdd_rooted",
    "metrics_record",
    "parse_dis",
    "parse_dis_file",
    "parse_relation_file",
    "parse_relation_line",
    "pearson",
    "pretty_print",
    "read_dep",
    "read_metrics",
    "read_segmentation",
    "resolve_span_set",
    "sd_distances",
    "sense_symmetry",
    "tree_heads",
    "validate_graph",
    "write_correlation",
    "write_dep",
    "write_metrics",
]
