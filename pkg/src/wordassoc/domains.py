"""Subsets D of X* with membership tests and bounded enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Alphabet, ConfigError, Word, iter_words, numeric, render_word


def _is_factor(v: Word, w: Word) -> bool:
    n = len(v)
    return any(w[i:i + n] == v for i in range(len(w) - n + 1))


@dataclass(frozen=True)
class DomainSet:
    """A domain D ⊆ X* over ``alphabet``.

    ``kind`` is one of ``full``, ``maxlen``, ``minlen``, ``repeats``,
    ``factor``, ``threshold`` and ``explicit``; ``arg`` holds the kind's
    parameter (m, the factor word, the threshold, or the word set).
    """

    kind: str
    alphabet: Alphabet
    arg: object = None

    def __post_init__(self):
        if self.kind not in _PREDICATES:
            raise ConfigError(f"unknown domain kind {self.kind!r}")
        if self.kind in ("maxlen", "minlen"):
            if not isinstance(self.arg, int) or self.arg < 0:
                raise ConfigError(f"{self.kind} needs a nonnegative integer, got {self.arg!r}")
        elif self.kind == "factor":
            object.__setattr__(self, "arg", tuple(self.arg))
        elif self.kind == "threshold":
            object.__setattr__(self, "arg", numeric(self.arg))
        elif self.kind == "explicit":
            words = frozenset(tuple(w) for w in self.arg or ())
            if not words:
                raise ConfigError("explicit domain must be nonempty")
            object.__setattr__(self, "arg", words)

    def __contains__(self, w: Word) -> bool:
        return _PREDICATES[self.kind](self.arg, w)

    def contains(self, w: Word) -> bool:
        return w in self

    def enumerate(self, bound: int) -> list:
        """Members of length <= bound, shortlex."""
        if self.kind == "maxlen":
            return list(iter_words(self.alphabet, min(self.arg, bound)))
        if self.kind == "minlen":
            return list(iter_words(self.alphabet, bound, min_len=self.arg))
        if self.kind == "explicit":
            return sorted((w for w in self.arg if len(w) <= bound), key=self.alphabet.word_key)
        return [w for w in iter_words(self.alphabet, bound) if w in self]

    def label(self) -> str:
        if self.kind == "full":
            return "X*"
        if self.kind == "maxlen":
            return f"D_{self.arg}"
        if self.kind == "minlen":
            return f"{{|x| >= {self.arg}}}"
        if self.kind == "repeats":
            return "{x^n}"
        if self.kind == "factor":
            return f"X* {render_word(self.arg)} X*"
        if self.kind == "threshold":
            return f"{{x <= {self.arg}}}"
        return "{" + ", ".join(render_word(w) for w in sorted(self.arg, key=self.alphabet.word_key)) + "}"


_PREDICATES = {
    "full": lambda arg, w: True,
    "maxlen": lambda m, w: len(w) <= m,
    "minlen": lambda m, w: len(w) >= m,
    "repeats": lambda arg, w: len(set(w)) <= 1,
    "factor": lambda v, w: _is_factor(v, w),
    "threshold": lambda s, w: len(w) == 1 and isinstance(w[0], Fraction) and w[0] <= s,
    "explicit": lambda ws, w: w in ws,
}


def full(alphabet: Alphabet) -> DomainSet:
    return DomainSet("full", alphabet)


def max_len(alphabet: Alphabet, m: int) -> DomainSet:
    return DomainSet("maxlen", alphabet, m)


def min_len(alphabet: Alphabet, m: int) -> DomainSet:
    return DomainSet("minlen", alphabet, m)


def repeats(alphabet: Alphabet) -> DomainSet:
    return DomainSet("repeats", alphabet)


def factor(alphabet: Alphabet, w: Word) -> DomainSet:
    return DomainSet("factor", alphabet, tuple(w))


def threshold(alphabet: Alphabet, s) -> DomainSet:
    return DomainSet("threshold", alphabet, s)


def explicit(alphabet: Alphabet, words) -> DomainSet:
    return DomainSet("explicit", alphabet, words)


def subset_up_to(d1: DomainSet, d2: DomainSet, bound: int) -> bool:
    """True iff every member of d1 up to ``bound`` is a member of d2."""
    return all(w in d2 for w in d1.enumerate(bound))


def contains(d: DomainSet, w: Word) -> bool:
    return w in d


__all__ = [
    "DomainSet", "full", "max_len", "min_len", "repeats", "factor", "threshold",
    "explicit", "subset_up_to", "contains",
]
