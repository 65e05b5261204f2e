"""Fairness-aware binary classification toolkit.

Group accuracy parity (GAP) training for recidivism risk data, sixteen
classical group-fairness metrics over per-group confusion counts, a
small from-scratch neural classifier with hand-derived gradients, and
accuracy-fairness trade-off analysis (lambda sweeps, Pareto fronts,
perfect-fairness baselines, violin and Wasserstein proxy analysis).
"""

from .analysis import (
    DEFAULT_LAMBDAS,
    DEFAULT_SEEDS,
    FairnessBaseline,
    ParetoFront,
    ProxyReport,
    TradeoffPoint,
    ViolinSummary,
    distribution_distance,
    fairness_baseline,
    lambda_sweep,
    pareto_front,
    proxy_report,
    unfairness,
    violin_summary,
)
from .dataset import (
    CohortPolicy,
    EncodingStats,
    FeatureMatrix,
    FeatureSchema,
    Record,
    RecordTable,
    cohort_summary,
    encode_features,
    filter_cohort,
    load_records,
    split,
    split_table,
)
from .errors import (
    ArityError,
    ConfigError,
    DegenerateGroupError,
    DegenerateLabelsError,
    DimensionError,
    EmptyCohortError,
    EmptyFrontError,
    FormatError,
    GapfairError,
    SchemaError,
    StratificationError,
)
from .group_metrics import (
    FairnessNotion,
    FairnessReport,
    GroupConfusion,
    NotionKind,
    absolute_equalized_odds,
    accuracy_difference,
    confusion_by_group,
    fairness_metric,
    full_report,
    group_error_difference,
    group_error_ratio,
    report_from_confusion,
)
from .losses import (
    ClassWeights,
    LossBreakdown,
    bce,
    class_weights,
    gap_gradient,
    gap_loss,
    group_ce,
    sigmoid,
    wbce,
    wbce_gradient,
)
from .model import (
    Architecture,
    ModelParams,
    backward,
    forward,
    init,
    params_from_json_dict,
    params_to_json_dict,
    predict,
)
from .trainer import (
    EvalResult,
    MultiRestartResult,
    TrainConfig,
    TrainHistory,
    evaluate,
    multi_restart,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # dataset
    "Record", "RecordTable", "CohortPolicy", "FeatureSchema", "FeatureMatrix",
    "EncodingStats", "load_records", "filter_cohort", "cohort_summary",
    "encode_features", "split", "split_table",
    # group metrics
    "FairnessNotion", "NotionKind", "GroupConfusion", "FairnessReport",
    "confusion_by_group", "fairness_metric", "full_report",
    "report_from_confusion", "accuracy_difference", "absolute_equalized_odds",
    "group_error_difference", "group_error_ratio",
    # losses
    "ClassWeights", "LossBreakdown", "sigmoid", "bce", "class_weights",
    "wbce", "group_ce", "gap_loss", "gap_gradient", "wbce_gradient",
    # model
    "Architecture", "ModelParams", "init", "forward", "backward", "predict",
    "params_to_json_dict", "params_from_json_dict",
    # trainer
    "TrainConfig", "TrainHistory", "EvalResult", "MultiRestartResult",
    "train", "multi_restart", "evaluate",
    # analysis
    "TradeoffPoint", "ParetoFront", "FairnessBaseline", "ViolinSummary",
    "ProxyReport", "lambda_sweep", "pareto_front", "fairness_baseline",
    "unfairness", "violin_summary", "distribution_distance", "proxy_report",
    "DEFAULT_LAMBDAS", "DEFAULT_SEEDS",
    # errors
    "GapfairError", "FormatError", "SchemaError", "ConfigError",
    "EmptyCohortError", "StratificationError", "DegenerateLabelsError",
    "DegenerateGroupError", "EmptyFrontError", "DimensionError", "ArityError",
]
