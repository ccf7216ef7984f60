"""Boosting by branch-and-price, with LPBoost and AdaBoost baselines."""

from ipboost._core import (
    AdaBoostVariant,
    Dataset,
    DecisionStump,
    Ensemble,
    Error,
    EtaKind,
    IpBoostResult,
    ModelFormatError,
    NoSolutionError,
    ParseError,
    SolverError,
    SolverStats,
    SparsifyResult,
    generate_hard,
    parse_libsvm,
    read_libsvm,
    sparsify,
    train_adaboost,
    train_ipboost,
    train_lpboost,
)

__all__ = [
    "AdaBoostVariant",
    "Dataset",
    "DecisionStump",
    "Ensemble",
    "Error",
    "EtaKind",
    "IpBoostResult",
    "ModelFormatError",
    "NoSolutionError",
    "ParseError",
    "SolverError",
    "SolverStats",
    "SparsifyResult",
    "generate_hard",
    "parse_libsvm",
    "read_libsvm",
    "sparsify",
    "train_adaboost",
    "train_ipboost",
    "train_lpboost",
]
