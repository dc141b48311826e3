"""Feature extraction for propositional formulas in CNF."""

from .cnf import Cnf, DimacsError, parse_dimacs, read_cnf, write_dimacs
from .preprocess import preprocess
from .registry import ExtractConfig, FeatureVector, Status, extract, manifest, validate_manifest
from .stats import StatSummary, summarize

__version__ = "0.1.0"

__all__ = [
    "Cnf", "DimacsError", "ExtractConfig", "FeatureVector", "StatSummary", "Status",
    "extract", "manifest", "parse_dimacs", "preprocess", "read_cnf", "summarize",
    "validate_manifest", "write_dimacs",
]
