"""Quasi-inverses and factorizations F = f ∘ H over finite tabulations.

The choice of preimages is canonical (shortlex minimum, preferring members
of D when a domain is given), which makes g, H and f deterministic.
H is only defined on the tabulated words X^{<=N}.  Without a domain, H(w) is
the smallest preimage of F(w) and w itself is one, so |H(w)| <= |w| and class
checks on H run at the full bound.  A domain-relative choice may pick a longer
preimage; the checks then run at N minus that growth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import domains
from .checkers import (
    DDETERMINED, DVALUED, PLAIN, PRIMED, Verdict, check_eq1, check_idempotent_on,
    check_range,
)
from .domains import DomainSet
from .words import Alphabet, ConfigError, OutputValue, Word, iter_words


class OutsideTable(KeyError):
    """Evaluation of a tabulated function outside its tabulated domain."""


@dataclass(frozen=True, eq=False)
class FnTable:
    entries: Dict[Word, OutputValue]
    bound: int
    source: str
    alphabet: Alphabet

    @property
    def name(self) -> str:
        return self.source

    def __call__(self, w: Word) -> OutputValue:
        try:
            return self.entries[w]
        except KeyError:
            raise OutsideTable(w) from None

    eval = __call__

    def range(self) -> List[OutputValue]:
        """Distinct values in order of first appearance."""
        return list(dict.fromkeys(self.entries.values()))


def tabulate(F, alphabet: Alphabet, bound: int) -> FnTable:
    if bound < 0:
        raise ConfigError("bound must be nonnegative")
    entries = {w: F(w) for w in iter_words(alphabet, bound)}
    return FnTable(entries, bound, getattr(F, "name", "F"), alphabet)


@dataclass(frozen=True)
class QuasiInverse:
    g: Dict[OutputValue, Word]
    flavor: str  # "plain" or "relative:<D>"
    # values with no preimage in D at the bound (g falls back to the overall minimum)
    fallback: tuple = ()

    def __call__(self, v: OutputValue) -> Word:
        return self.g[v]


def quasi_inverse(table: FnTable, D: Optional[DomainSet] = None) -> QuasiInverse:
    if not table.entries:
        raise ConfigError("empty table")
    overall: Dict[OutputValue, Word] = {}
    inside: Dict[OutputValue, Word] = {}
    for w, v in table.entries.items():  # shortlex order
        overall.setdefault(v, w)
        if D is not None and v not in inside and w in D:
            inside[v] = w
    if D is None:
        return QuasiInverse(overall, "plain")
    g = {v: inside.get(v, w) for v, w in overall.items()}
    missing = tuple(v for v in overall if v not in inside)
    return QuasiInverse(g, f"relative:{D.label()}", missing)


@dataclass
class Factorization:
    H: FnTable
    f: Dict[Word, OutputValue]
    g: QuasiInverse
    report: Dict[str, object] = field(default_factory=dict)
    verdicts: Dict[str, Verdict] = field(default_factory=dict)


def factorize(F, alphabet: Alphabet, bound: int, D: Optional[DomainSet] = None,
              workers: int = 1) -> Factorization:
    """Build g = canonical quasi-inverse of F's table, H = g ∘ F and
    f = F restricted to ran(H), then verify the construction.

    The report records (a) injectivity of f, (b) f ∘ H = F on the table,
    (c) idempotence of H on D (or everywhere), (d) H(D) ⊆ D, (e) the
    associativity-type verdicts of H and (f) the D-valued/associative
    conclusion when F has a D-determined range at the bound.
    """
    table = tabulate(F, alphabet, bound)
    g = quasi_inverse(table, D)
    H = FnTable({w: g(v) for w, v in table.entries.items()}, bound, f"g∘{table.source}", alphabet)
    f_map = {u: table(u) for u in dict.fromkeys(H.entries.values())}

    growth = max(0, max(len(h) - len(w) for w, h in H.entries.items()))
    check_bound = bound - growth
    dom = D if D is not None else domains.full(alphabet)
    report: Dict[str, object] = {"bound": bound, "check_bound": check_bound, "growth": growth,
                                 "flavor": g.flavor, "fallback_values": len(g.fallback)}
    verdicts: Dict[str, Verdict] = {}

    values = list(f_map.values())
    report["a_f_injective"] = len(set(values)) == len(values)
    report["b_mismatches"] = sum(1 for w, v in table.entries.items() if f_map[H(w)] != v)

    verdicts["c_idempotent_on_D"] = check_idempotent_on(H, dom, check_bound)
    verdicts["c_idempotent"] = check_idempotent_on(H, domains.full(alphabet), check_bound)
    if D is not None:
        report["d_H_maps_D_into_D"] = all(H(d) in D for d in D.enumerate(bound))

    full = domains.full(alphabet)
    if D is None:
        verdicts["e_eq1_full"] = check_eq1(H, full, PLAIN, check_bound, workers=workers)
    else:
        verdicts["e_eq1_plain"] = check_eq1(H, D, PLAIN, check_bound, workers=workers)
        verdicts["e_eq1_primed"] = check_eq1(H, D, PRIMED, check_bound, workers=workers)

        ddet = check_range(table, D, DDETERMINED, bound)
        verdicts["f_F_d_determined"] = ddet
        if not ddet.refuted:
            verdicts["f_H_d_valued"] = check_range(H, D, DVALUED, check_bound)
            verdicts["f_eq1_full"] = check_eq1(H, full, PLAIN, check_bound, workers=workers)

    for k, v in verdicts.items():
        report[k] = "passed" if not v.refuted else "refuted"
    return Factorization(H, f_map, g, report, verdicts)


def compose_tables(f_map: Dict[Word, OutputValue], H: FnTable) -> Dict[Word, OutputValue]:
    return {w: f_map[h] for w, h in H.entries.items()}


def is_quasi_inverse(table: FnTable, g: Dict[OutputValue, Word]) -> bool:
    """f ∘ g is the identity on ran(f) and dom(g) = ran(f)."""
    rng = set(table.entries.values())
    if set(g) != rng:
        return False
    return all(g[v] in table.entries and table(g[v]) == v for v in rng)
