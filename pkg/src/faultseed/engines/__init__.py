"""Mutant generators: grammar rules, bug-report-driven fix patterns, and
masked-token prediction."""

from .grammar import OPERATOR_FAMILIES, generate_grammar_mutants
from .mutant import ENGINES, GRAMMAR, PATTERN, PREDICTOR, Mutant, apply_edit, mutant_id
from .pattern import (
    DEFAULT_CAP, PATTERN_CATALOG, FixPattern, LocalizationRanking, Location,
    generate_pattern_mutants, localize,
)
from .predictor import (
    ALL, DEFAULT_CONTEXT_LIMIT, DEFAULT_K, MASK, ONE_PER_FUNCTION, POLICIES,
    EmptyCorpus, MaskedQuery, NGramModel, Prediction, generate_predictor_mutants,
    load_model, predict, save_model, train_ngram,
)

__all__ = [
    "ALL", "DEFAULT_CAP", "DEFAULT_CONTEXT_LIMIT", "DEFAULT_K", "ENGINES",
    "EmptyCorpus", "FixPattern", "GRAMMAR", "LocalizationRanking", "Location",
    "MASK", "MaskedQuery", "Mutant", "NGramModel", "ONE_PER_FUNCTION",
    "OPERATOR_FAMILIES", "PATTERN", "PATTERN_CATALOG", "POLICIES", "PREDICTOR",
    "Prediction", "apply_edit", "generate_grammar_mutants",
    "generate_pattern_mutants", "generate_predictor_mutants", "load_model",
    "localize", "mutant_id", "predict", "save_model", "train_ngram",
]
