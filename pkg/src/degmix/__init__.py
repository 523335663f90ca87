"""Scale-free geometric random graphs and degree-mixing analytics."""

from .coefficients import (CoefficientReport, coefficient_report,
                           hill_estimator, kendall_assortativity,
                           pearson_assortativity, remaining_degree_pairs,
                           spearman_assortativity)
from .edgelist import IngestReport, read_edge_list, write_edge_list
from .errors import (DegmixError, EdgeListFormatError, GraphError,
                     ParameterError)
from .gen import (MODELS, CalibrationResult, ModelParams,
                  calibrate_avg_degree, connection_probability, generate,
                  generate_chung_lu_fast, generate_naive, generate_rgg,
                  generate_tgirg_fast, pareto_quantile, sample_positions,
                  sample_weights, supergraph_weights, torus_distance)
from .graph import (DegreeSequence, Graph, average_clustering, build_graph,
                    local_clustering, sample_edge_endpoint, triangle_counts)
from .jointdist import (BucketScheme, CCDFCurves, ConditionalHeatmap,
                        JointHistogram, bucket_scheme, ccdf,
                        conditional_change_heatmap, degree_ccdf_curves,
                        joint_degree_histogram)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Graph", "DegreeSequence", "build_graph", "local_clustering",
    "average_clustering", "triangle_counts", "sample_edge_endpoint",
    "IngestReport", "read_edge_list", "write_edge_list",
    "MODELS", "ModelParams", "CalibrationResult", "calibrate_avg_degree",
    "generate", "generate_naive", "generate_rgg", "generate_chung_lu_fast",
    "generate_tgirg_fast", "connection_probability", "torus_distance",
    "pareto_quantile", "sample_weights", "sample_positions",
    "supergraph_weights",
    "CoefficientReport", "coefficient_report", "remaining_degree_pairs",
    "pearson_assortativity", "spearman_assortativity",
    "kendall_assortativity", "hill_estimator",
    "BucketScheme", "bucket_scheme", "JointHistogram",
    "joint_degree_histogram", "ConditionalHeatmap",
    "conditional_change_heatmap", "CCDFCurves", "degree_ccdf_curves", "ccdf",
    "DegmixError", "ParameterError", "GraphError", "EdgeListFormatError",
]
