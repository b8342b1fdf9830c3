"""Membership profiles along D_0 ⊆ D_1 ⊆ ... and the degree d = 2^-k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional, Tuple, Union

from . import domains
from .catalogue import patch
from .checkers import PLAIN, PRIMED, Verdict, check_eq1, check_eq2
from .domains import DomainSet
from .words import Alphabet, ConfigError, iter_words

FAMILIES = ("A", "Ap", "P", "Pp")
INFINITE = "infinite"
OUTSIDE = "outside"


def run_family(F, family: str, D: DomainSet, bound: int, workers: int = 1) -> Verdict:
    if family == "A":
        return check_eq1(F, D, PLAIN, bound, workers=workers)
    if family == "Ap":
        return check_eq1(F, D, PRIMED, bound, workers=workers)
    if family == "P":
        return check_eq2(F, D, PLAIN, bound, workers=workers)
    if family == "Pp":
        return check_eq2(F, D, PRIMED, bound, workers=workers)
    raise ConfigError(f"unknown family {family!r} (expected one of {', '.join(FAMILIES)})")


@dataclass(frozen=True)
class HierarchyProfile:
    family: str
    bound: int
    max_m: int
    per_m: Tuple[Tuple[int, Verdict], ...]
    k_observed: Union[int, str]
    degree: Optional[Fraction]
    note: str = ""

    def monotone(self) -> bool:
        """No Refuted -> Passed flip as m grows."""
        seen_refuted = False
        for _, v in self.per_m:
            if seen_refuted and not v.refuted:
                return False
            seen_refuted = seen_refuted or v.refuted
        return True


def profile(F, family: str, alphabet: Alphabet, bound: int, max_m: int, workers: int = 1) -> HierarchyProfile:
    if max_m > bound:
        raise ConfigError("max_m must not exceed the bound")
    if max_m < 0:
        raise ConfigError("max_m must be nonnegative")
    per_m = tuple(
        (m, run_family(F, family, domains.max_len(alphabet, m), bound, workers))
        for m in range(max_m + 1)
    )
    k: Union[int, str] = INFINITE
    if per_m[0][1].refuted:
        k = OUTSIDE
    else:
        for (m, v), (_, nxt) in zip(per_m, per_m[1:]):
            if not v.refuted and nxt.refuted:
                k = m
                break

    degree: Optional[Fraction] = None
    note = f"observed at N={bound}, max_m={max_m}"
    if family in ("A", "P"):
        if k == INFINITE:
            degree = Fraction(0)
        elif isinstance(k, int):
            degree = Fraction(1, 2**k)
            if k == 0:
                note += "; k = 0 admitted (the level m = 0 counts)"
    else:
        note += "; no degree defined for primed families"
    return HierarchyProfile(family, bound, max_m, per_m, k, degree, note)


def degree_line(p: HierarchyProfile) -> str:
    if p.k_observed == OUTSIDE:
        return f"outside hierarchy ({p.note})"
    if p.degree is None:
        return f"no degree ({p.note})"
    if p.k_observed == INFINITE:
        return f"d = 0 ({p.note})"
    return f"d = 2^-{p.k_observed} = {p.degree} ({p.note})"


def separation_search(pair: Tuple[str, str], D: DomainSet, generator: Iterable, bound: int):
    """First generated function that is in one class of ``pair`` at the bound
    and refuted in the other, or None.

    Purely experimental: a hit is a bounded observation, a miss proves nothing.
    """
    first, second = pair
    for F in generator:
        a = run_family(F, first, D, bound)
        b = run_family(F, second, D, bound)
        if a.refuted != b.refuted:
            return F
    return None


def patch_generator(base, alphabet: Alphabet, in_len: int, out_len: int, max_points: int = 2):
    """``base`` followed by every patch of it on words of length <= in_len
    with outputs of length <= out_len, ordered by number of patched points,
    then by (input, output) shortlex.  Exhaustive over the finite tables when
    ``max_points`` covers every input."""
    inputs = list(iter_words(alphabet, in_len))
    outputs = list(iter_words(alphabet, out_len))
    yield base
    for k in range(1, max_points + 1):
        for points in combinations(inputs, k):
            choices = [[o for o in outputs if o != base(w)] for w in points]
            for outs in product(*choices):
                yield patch(base, dict(zip(points, outs)))


__all__ = [
    "FAMILIES", "INFINITE", "OUTSIDE", "HierarchyProfile", "profile", "degree_line",
    "run_family", "separation_search", "patch_generator",
]
