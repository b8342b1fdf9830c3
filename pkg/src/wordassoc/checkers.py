"""Bounded-exhaustive deciders for the associativity-type conditions.

Every checker quantifies over words of bounded length only.  A
:class:`Refuted` verdict carries a concrete, replayable witness; a
:class:`PassedUpTo` verdict says nothing beyond its bound.

Witnesses are canonical: the first failure in the lexicographic order of the
witness tuple, each component compared shortlex.  Associativity tuples are ordered
``(y, x, z)``; preassociativity tuples ``(y, y', x, z)``.  Running with several
workers partitions the outermost component into contiguous chunks and keeps
the failure from the earliest chunk, so the result does not depend on the
worker count.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .domains import DomainSet
from .words import (
    EPS, Alphabet, ConfigError, Opaque, OutputValue, Word, is_word, iter_words,
    render_value, render_word,
)

PLAIN = "plain"
PRIMED = "primed"
DVALUED = "dvalued"
DDETERMINED = "ddetermined"

TRUE = Opaque("true")
FALSE = Opaque("false")
WORD_REQUIRED = Opaque("word-required")


@dataclass(frozen=True)
class Counterexample:
    kind: str  # Eq1 | Eq2 | Cond3 | Range | Idem
    y: Word
    lhs: OutputValue
    rhs: OutputValue
    x: Word = EPS
    z: Word = EPS
    yprime: Optional[Word] = None
    witness_d: Optional[Word] = None
    detail: str = ""


@dataclass(frozen=True)
class Refuted:
    check: str
    ce: Counterexample
    bound: int
    params: dict = field(default_factory=dict, compare=False, repr=False)

    refuted = True


@dataclass(frozen=True)
class PassedUpTo:
    check: str
    bound: int
    cases_checked: int
    params: dict = field(default_factory=dict, compare=False, repr=False)

    refuted = False


Verdict = Union[Refuted, PassedUpTo]


def _memo(F) -> Callable[[Word], OutputValue]:
    cache: Dict[Word, OutputValue] = {}

    def f(w):
        try:
            return cache[w]
        except KeyError:
            v = cache[w] = F(w)
            return v

    return f


def _check_bound(n, name="bound"):
    if not isinstance(n, int) or n < 0:
        raise ConfigError(f"{name} must be a nonnegative integer, got {n!r}")


def _context_counts(k: int, r: int) -> List[int]:
    """c[s] = number of pairs (x, z) with |x| + |z| <= s, for s <= r."""
    out, total = [], 0
    for s in range(r + 1):
        total += (s + 1) * k**s
        out.append(total)
    return out


# -- worker pool ---------------------------------------------------------------

_STATE: dict = {}


def _chunk_task(args):
    name, lo, hi = args
    return _STATE[name](lo, hi)


def _run_chunked(scan: Callable[[int, int], tuple], n_items: int, workers: int):
    """Run ``scan(lo, hi)`` over [0, n_items) and return the earliest
    non-None witness together with the total case count.

    ``scan`` returns ``(witness_or_None, cases)``; it must scan its range in
    order and stop at the first witness.
    """
    if workers <= 1 or n_items < 2:
        return scan(0, n_items)
    workers = min(workers, n_items)
    step = -(-n_items // workers)
    chunks = [(lo, min(lo + step, n_items)) for lo in range(0, n_items, step)]
    key = f"scan{id(scan)}"
    _STATE[key] = scan
    try:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            results = list(pool.map(_chunk_task, [(key, lo, hi) for lo, hi in chunks]))
    finally:
        _STATE.pop(key, None)
    cases = 0
    for witness, n in results:
        cases += n
        if witness is not None:
            return witness, cases
    return None, cases


# -- associativity -------------------------------------------------------------------

def admitted_eq1(F, D: DomainSet, mode: str, bound: int, domain_bound: Optional[int] = None):
    """Shortlex list of admitted y and, in primed mode, the witness d for each."""
    f = F
    if mode == PLAIN:
        return D.enumerate(bound), None
    if mode != PRIMED:
        raise ConfigError(f"unknown mode {mode!r}")
    nd = bound if domain_bound is None else domain_bound
    image: Dict[OutputValue, Word] = {}
    for d in D.enumerate(nd):
        image.setdefault(f(d), d)
    ys, ds = [], []
    for y in iter_words(D.alphabet, bound):
        d = image.get(f(y))
        if d is not None:
            ys.append(y)
            ds.append(d)
    return ys, ds


def check_eq1(F, D: DomainSet, mode: str = PLAIN, bound: int = 4,
              domain_bound: Optional[int] = None, workers: int = 1) -> Verdict:
    """Decide F(xyz) = F(xF(y)z) over admitted y and |xyz| <= bound.

    Plain mode admits y in D; primed mode admits y with F(y) in F(D), where
    F(D) is approximated by the images of members of D up to
    ``domain_bound`` (default ``bound``).
    """
    _check_bound(bound)
    if domain_bound is not None:
        _check_bound(domain_bound, "domain_bound")
    alphabet = D.alphabet
    f = _memo(F)
    ys, ds = admitted_eq1(f, D, mode, bound, domain_bound)
    k = len(alphabet.letters)
    counts = _context_counts(k, bound)
    check = f"Eq1[{mode}] D={D.label()}"
    params = {"domain": D, "mode": mode, "domain_bound": bound if domain_bound is None else domain_bound}

    def scan(lo, hi):
        cases = 0
        for i in range(lo, hi):
            y = ys[i]
            d = ds[i] if ds is not None else None
            fy = f(y)
            if not is_word(fy):
                return Counterexample("Eq1", y, WORD_REQUIRED, fy, witness_d=d,
                                      detail=f"F({render_word(y)}) = {render_value(fy)} is not a word"), cases
            r = bound - len(y)
            if fy == y:
                cases += counts[r]
                continue
            for x in iter_words(alphabet, r):
                for z in iter_words(alphabet, r - len(x)):
                    lhs = f(x + y + z)
                    rhs = f(x + fy + z)
                    if lhs != rhs:
                        return Counterexample("Eq1", y, lhs, rhs, x=x, z=z, witness_d=d), cases
            cases += counts[r]
        return None, cases

    ce, cases = _run_chunked(scan, len(ys), workers)
    if ce is not None:
        return Refuted(check, ce, bound, params)
    return PassedUpTo(check, bound, cases, params)


# -- preassociativity -------------------------------------------------------------------

class _Eq2Index:
    """Per-word context signatures for the preassociativity check.

    For a pair (y, y') the admissible contexts are the (x, z) with
    |x| + |z| <= s where s = bound - max(|y|, |y'|).  Contexts are ordered by
    total length so the signature at level s is a prefix of the full one.
    Two words with equal values violate preassociativity at level s iff their
    signatures at s differ.
    """

    def __init__(self, f, alphabet: Alphabet, bound: int, candidates: Sequence[Word]):
        self.f = f
        self.bound = bound
        words = list(iter_words(alphabet, bound))
        self.vals = {w: f(w) for w in words}
        ctx: List[Tuple[Word, Word]] = []
        for t in range(bound + 1):
            for x in iter_words(alphabet, t):
                for z in iter_words(alphabet, t - len(x), min_len=t - len(x)):
                    ctx.append((x, z))
        self.ctx = ctx
        self.counts = _context_counts(len(alphabet.letters), bound)
        self.classes: Dict[OutputValue, Dict[int, List[Word]]] = {}
        for w in candidates:
            self.classes.setdefault(self.vals[w], {}).setdefault(len(w), []).append(w)
        self._groups: dict = {}

    def sig(self, w: Word, s: int) -> tuple:
        vals = self.vals
        return tuple(vals[x + w + z] for x, z in self.ctx[:self.counts[s]])

    def groups(self, value, length: int, s: int):
        """First member of each distinct signature among same-value, same-length
        candidates, in shortlex order of those first members (at most two kept)."""
        key = (value, length, s)
        g = self._groups.get(key)
        if g is None:
            g, seen = [], set()
            for w in self.classes.get(value, {}).get(length, ()):
                sg = self.sig(w, s)
                if sg not in seen:
                    seen.add(sg)
                    g.append((w, sg))
                    if len(g) == 2:
                        break
            self._groups[key] = g
        return g

    def first_partner(self, y: Word) -> Optional[Word]:
        value = self.vals[y]
        by_len = self.classes.get(value, {})
        sigs = {}
        for length in sorted(by_len):
            s = self.bound - max(len(y), length)
            if s <= 0:
                continue
            target = sigs.get(s)
            if target is None:
                target = sigs[s] = self.sig(y, s)
            for w, sg in self.groups(value, length, s):
                if sg != target:
                    return w
        return None

    def cases_for(self, y: Word) -> int:
        by_len = self.classes.get(self.vals[y], {})
        return sum(len(ws) * self.counts[self.bound - max(len(y), n)] for n, ws in by_len.items())


def check_eq2(F, D: DomainSet, mode: str = PLAIN, bound: int = 4, workers: int = 1) -> Verdict:
    """Decide F(y) = F(y') => F(xyz) = F(xy'z) with |xyz|, |xy'z| <= bound.

    Plain mode takes y, y' in D; primed mode takes y in D and y' free.
    """
    _check_bound(bound)
    if mode not in (PLAIN, PRIMED):
        raise ConfigError(f"unknown mode {mode!r}")
    alphabet = D.alphabet
    f = _memo(F)
    ys = D.enumerate(bound)
    candidates = ys if mode == PLAIN else list(iter_words(alphabet, bound))
    index = _Eq2Index(f, alphabet, bound, candidates)
    vals = index.vals
    check = f"Eq2[{mode}] D={D.label()}"
    params = {"domain": D, "mode": mode}

    def scan(lo, hi):
        cases = 0
        for i in range(lo, hi):
            y = ys[i]
            yp = index.first_partner(y)
            if yp is None:
                cases += index.cases_for(y)
                continue
            r = bound - max(len(y), len(yp))
            for x in iter_words(alphabet, r):
                for z in iter_words(alphabet, r - len(x)):
                    lhs, rhs = vals[x + y + z], vals[x + yp + z]
                    if lhs != rhs:
                        return Counterexample("Eq2", y, lhs, rhs, x=x, z=z, yprime=yp), cases
            raise AssertionError("signature mismatch without a witnessing context")
        return None, cases

    ce, cases = _run_chunked(scan, len(ys), workers)
    if ce is not None:
        return Refuted(check, ce, bound, params)
    return PassedUpTo(check, bound, cases, params)


# -- length separation, ranges, idempotence ------------------------------------------

def _low_range(f, alphabet: Alphabet, m: int) -> Dict[OutputValue, Word]:
    """Values of F on words of length <= m, each with its shortlex-min preimage."""
    rng: Dict[OutputValue, Word] = {}
    for w in iter_words(alphabet, m):
        rng.setdefault(f(w), w)
    return rng


def check_condition3(F, alphabet: Alphabet, m: int, bound: int) -> Verdict:
    """F(y) lands in the values of F on X^{<=m} exactly when |y| <= m."""
    _check_bound(m, "m")
    _check_bound(bound)
    if bound < m:
        raise ConfigError("cond3 needs bound >= m")
    f = _memo(F)
    low = _low_range(f, alphabet, m)
    check = f"Cond3 m={m}"
    cases = 0
    for y in iter_words(alphabet, bound):
        cases += 1
        hit = low.get(f(y))
        if (hit is not None) != (len(y) <= m):
            ce = Counterexample(
                "Cond3", y, TRUE if hit is not None else FALSE, TRUE if len(y) <= m else FALSE,
                witness_d=hit,
                detail=f"F({render_word(y)}) = {render_value(f(y))}"
                       + (f" = F({render_word(hit)})" if hit is not None else " outside the low range")
                       + f" while |y| = {len(y)}",
            )
            return Refuted(check, ce, bound, {"m": m, "alphabet": alphabet})
    return PassedUpTo(check, bound, cases, {"m": m, "alphabet": alphabet})


def check_range(F, D: DomainSet, which: str, bound: int) -> Verdict:
    """D-valued: every F(w) is a word in D.  D-determined: every value of F on
    X^{<=bound} is also a value on D ∩ X^{<=bound}."""
    _check_bound(bound)
    f = _memo(F)
    check = f"Range[{which}] D={D.label()}"
    params = {"domain": D, "which": which}
    words = iter_words(D.alphabet, bound)
    if which == DVALUED:
        for n, w in enumerate(words):
            v = f(w)
            if not (is_word(v) and v in D):
                ce = Counterexample("Range", w, FALSE, TRUE,
                                    detail=f"F({render_word(w)}) = {render_value(v)} not in {D.label()}")
                return Refuted(check, ce, bound, params)
        return PassedUpTo(check, bound, n + 1, params)
    if which == DDETERMINED:
        image = {}
        for d in D.enumerate(bound):
            image.setdefault(f(d), d)
        for n, w in enumerate(words):
            v = f(w)
            if v not in image:
                ce = Counterexample("Range", w, FALSE, TRUE,
                                    detail=f"F({render_word(w)}) = {render_value(v)} not attained on {D.label()}")
                return Refuted(check, ce, bound, params)
        return PassedUpTo(check, bound, n + 1, params)
    raise ConfigError(f"unknown range property {which!r}")


def check_m_determined_criterion(F, alphabet: Alphabet, m: int, bound: int) -> Verdict:
    """Every value of F on X^{m+1} is a value of F on X^{<=m}."""
    _check_bound(m, "m")
    if bound < m + 1:
        raise ConfigError("the m-determined criterion needs bound >= m + 1")
    f = _memo(F)
    low = _low_range(f, alphabet, m)
    check = f"MDet m={m}"
    cases = 0
    for w in iter_words(alphabet, m + 1, min_len=m + 1):
        cases += 1
        if f(w) not in low:
            ce = Counterexample("Range", w, FALSE, TRUE,
                                detail=f"F({render_word(w)}) = {render_value(f(w))} not attained on lengths <= {m}")
            return Refuted(check, ce, bound, {"m": m, "alphabet": alphabet})
    return PassedUpTo(check, bound, cases, {"m": m, "alphabet": alphabet})


def check_idempotent_on(F, D: DomainSet, bound: int) -> Verdict:
    """F(F(d)) = F(d) for every d in D up to ``bound``."""
    _check_bound(bound)
    f = _memo(F)
    check = f"Idem D={D.label()}"
    cases = 0
    for d in D.enumerate(bound):
        cases += 1
        fd = f(d)
        if not is_word(fd):
            return Refuted(check, Counterexample("Idem", d, WORD_REQUIRED, fd), bound, {"domain": D})
        ffd = f(fd)
        if ffd != fd:
            return Refuted(check, Counterexample("Idem", d, ffd, fd), bound, {"domain": D})
    return PassedUpTo(check, bound, cases, {"domain": D})


# -- replay ----------------------------------------------------------------------

def replay(F, verdict: Refuted) -> bool:
    """Re-evaluate F on the stored witness; True iff the failure reproduces."""
    ce, p = verdict.ce, verdict.params
    f = F
    if ce.lhs == ce.rhs:
        return False
    if ce.kind == "Eq1":
        fy = f(ce.y)
        if p.get("mode") == PRIMED:
            d = ce.witness_d
            if d is None or d not in p["domain"] or f(d) != fy:
                return False
        elif ce.y not in p["domain"]:
            return False
        if not is_word(fy):
            return ce.rhs == fy
        return f(ce.x + ce.y + ce.z) == ce.lhs and f(ce.x + fy + ce.z) == ce.rhs
    if ce.kind == "Eq2":
        D = p["domain"]
        if ce.y not in D or (p.get("mode") == PLAIN and ce.yprime not in D):
            return False
        return (f(ce.y) == f(ce.yprime) and f(ce.x + ce.y + ce.z) == ce.lhs
                and f(ce.x + ce.yprime + ce.z) == ce.rhs)
    if ce.kind == "Idem":
        fd = f(ce.y)
        if ce.y not in p["domain"]:
            return False
        if not is_word(fd):
            return ce.rhs == fd
        return f(fd) == ce.lhs and fd == ce.rhs
    if ce.kind == "Cond3":
        m = p["m"]
        in_low = f(ce.y) in _low_range(f, p["alphabet"], m)
        return (TRUE if in_low else FALSE) == ce.lhs and (TRUE if len(ce.y) <= m else FALSE) == ce.rhs
    if ce.kind == "Range":
        v = f(ce.y)
        if "m" in p:
            return v not in _low_range(f, p["alphabet"], p["m"]) and len(ce.y) == p["m"] + 1
        D = p["domain"]
        if p["which"] == DVALUED:
            return not (is_word(v) and v in D)
        return all(f(d) != v for d in D.enumerate(verdict.bound))
    raise ValueError(f"unknown counterexample kind {ce.kind!r}")
