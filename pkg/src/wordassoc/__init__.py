"""Bounded-exhaustive analysis of associativity relaxations for functions on words."""

from .catalogue import VariadicFn, compose, instantiate, patch
from .checkers import (
    DDETERMINED, DVALUED, PLAIN, PRIMED, Counterexample, PassedUpTo, Refuted,
    check_condition3, check_eq1, check_eq2, check_idempotent_on,
    check_m_determined_criterion, check_range, replay,
)
from .domains import DomainSet, subset_up_to
from .factorization import FnTable, factorize, quasi_inverse, tabulate
from .hierarchy import degree_line, profile, separation_search
from .words import (
    EPS, Alphabet, ConfigError, Opaque, concat_power, enumerate_words, power, word,
)

__version__ = "0.1.0"

__all__ = [
    "VariadicFn", "compose", "instantiate", "patch",
    "DDETERMINED", "DVALUED", "PLAIN", "PRIMED", "Counterexample", "PassedUpTo", "Refuted",
    "check_condition3", "check_eq1", "check_eq2", "check_idempotent_on",
    "check_m_determined_criterion", "check_range", "replay",
    "DomainSet", "subset_up_to", "FnTable", "factorize", "quasi_inverse", "tabulate",
    "degree_line", "profile", "separation_search",
    "EPS", "Alphabet", "ConfigError", "Opaque", "concat_power", "enumerate_words", "power", "word",
]
