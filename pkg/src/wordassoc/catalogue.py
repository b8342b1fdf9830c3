"""Named example functions and combinators over words.

Every entry is a total, pure map from words to output values.  Entries that
need something from the alphabet (vowels for ``indexer``, a case map for
``uppercase``, numeric letters for ``mean``) check for it at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Mapping

from .words import (
    EPS, Alphabet, ConfigError, Opaque, OutputValue, Word, is_word,
    render_value, render_word,
)


@dataclass(frozen=True, eq=False)
class VariadicFn:
    name: str
    fn: Callable[[Word], OutputValue]
    params: Mapping[str, object] = field(default_factory=dict)

    def eval(self, w: Word) -> OutputValue:
        return self.fn(w)

    __call__ = eval

    def __repr__(self) -> str:
        return f"VariadicFn({self.name})"


def _need_m(params, key="m", minimum=0) -> int:
    m = params.get(key)
    if not isinstance(m, int) or isinstance(m, bool) or m < minimum:
        raise ConfigError(f"parameter {key!r} must be an integer >= {minimum}, got {m!r}")
    return m


def _need_symbol(alphabet: Alphabet, params, key) -> str:
    a = params.get(key, alphabet.symbols[0] if alphabet.symbols else None)
    if a not in alphabet.symbols:
        raise ConfigError(f"parameter {key!r}={a!r} is not an alphabet symbol")
    return a


def _identity(alphabet, params):
    return lambda w: w


def _sort(alphabet, params):
    key = alphabet.letter_key
    return lambda w: tuple(sorted(w, key=key))


def _uppercase(alphabet, params):
    if not alphabet.case_map:
        raise ConfigError("uppercase needs a nonempty case_map")
    cmap = alphabet.case_map
    return lambda w: tuple(cmap.get(c, c) for c in w)


def _length(alphabet, params):
    return lambda w: Opaque(f"len:{len(w)}")


def _prefix(alphabet, params):
    m = _need_m(params)
    return lambda w: w[:m]


def _indexer(alphabet, params):
    m = _need_m(params)
    for tok in ("v", "c"):
        if tok not in alphabet.symbols:
            raise ConfigError(f"indexer needs the symbol {tok!r} in the alphabet")
    vowels = alphabet.vowel_set

    def code(c):
        return "v" if c in vowels else "c"

    return lambda w: w if len(w) <= m else w[:m] + tuple(code(c) for c in w[m:])


def _ex23_f(alphabet, params):
    m = _need_m(params, minimum=1)
    return lambda w: w if len(w) < m else w[:m - 1] + (Fraction(len(w)),)


def _ex23_g(alphabet, params):
    m = _need_m(params)

    def g(w):
        if len(w) < m:
            return w
        return w[:m] + (Fraction(sum(isinstance(c, str) for c in w)),)

    return g


def _ex24(alphabet, params):
    m = _need_m(params, minimum=1)
    return lambda w: w if len(w) <= m or len(w) == m + 2 else w[:m]


def _factor_marker(alphabet, params):
    target = tuple(params.get("w", ()))
    n = len(target)

    def f(w):
        for i in range(len(w) - n + 1):
            if w[i:i + n] == target:
                return target
        return EPS

    return f


_NONNUMERIC = Opaque("mean:nonnumeric")


def _mean(alphabet, params):
    if not alphabet.numeric_samples:
        raise ConfigError("mean needs numeric_samples in the alphabet")

    def f(w):
        if not w:
            return EPS
        if not all(isinstance(c, Fraction) for c in w):
            return _NONNUMERIC
        return (sum(w, Fraction(0)) / len(w),)

    return f


def _letterwise_perm(alphabet, params):
    sigma = dict(params.get("sigma", {}))
    if not sigma:
        raise ConfigError("letterwise_perm needs a nonempty 'sigma' mapping")
    syms = set(alphabet.symbols)
    if not (set(sigma) <= syms and set(sigma.values()) == set(sigma)):
        raise ConfigError("sigma must permute a set of alphabet symbols")
    return lambda w: tuple(sigma.get(c, c) for c in w)


def _drop_prev(alphabet, params):
    m = _need_m(params, minimum=1)
    return lambda w: w if len(w) <= m else w[:m] + (w[-2],)


def _eps_to_a(alphabet, params):
    a = _need_symbol(alphabet, params, "a")
    return lambda w: w if w else (a,)


def _collapse_eps_a(alphabet, params):
    a = _need_symbol(alphabet, params, "a")
    return lambda w: EPS if w == (a,) else w


ENTRIES: Dict[str, tuple] = {
    # key: (builder, anchor, parameter names)
    "identity": (_identity, "F(x) = x", ()),
    "sort": (_sort, "letters sorted in alphabet order (associative)", ()),
    "uppercase": (_uppercase, "letterwise upper case (associative)", ()),
    "length": (_length, "length of the input, opaque values (preassociative)", ()),
    "prefix": (_prefix, "prefix of length m (associative at every level)", ("m",)),
    "indexer": (_indexer, "prefix of length m, then vowel/consonant codes (leaves A at D_{m+1})", ("m",)),
    "ex23_F": (_ex23_f, "x_1..x_{m-1} |x| when |x| >= m (length counter)", ("m",)),
    "ex23_G": (_ex23_g, "x_1..x_m |x|_L when |x| >= m (symbol counter)", ("m",)),
    "ex24": (_ex24, "x unless |x| = m+1 or |x| > m+2 (separates A and primed A)", ("m",)),
    "factor_marker": (_factor_marker, "w if w is a factor, else ε (primed-associative on X* w X*)", ("w",)),
    "mean": (_mean, "arithmetic mean of numeric letters (preassociative only near ε)", ()),
    "letterwise_perm": (_letterwise_perm, "σ applied letterwise (preassociative, not associative)", ("sigma",)),
    "drop_to_prefix_plus_prev": (_drop_prev, "x_1..x_m x_{k-1} when k > m (leaves P at D_{m+1})", ("m",)),
    "eps_to_a": (_eps_to_a, "F(ε) = a, identity elsewhere (outside every A level)", ("a",)),
    "collapse_eps_a": (_collapse_eps_a, "F(ε) = F(a) = ε, identity elsewhere (in A at D_0, not primed)", ("a",)),
}


def _param_label(v) -> str:
    if isinstance(v, tuple):
        return render_word(v)
    if isinstance(v, dict):
        return ",".join(f"{k}>{v[k]}" for k in sorted(v))
    return str(v)


def instantiate(key: str, alphabet: Alphabet, **params) -> VariadicFn:
    try:
        builder, _, names = ENTRIES[key]
    except KeyError:
        raise ConfigError(f"unknown catalogue key {key!r}") from None
    unknown = set(params) - set(names)
    if unknown:
        raise ConfigError(f"{key}: unknown parameters {sorted(unknown)}")
    if key == "factor_marker":
        if "w" not in params:
            raise ConfigError("factor_marker needs parameter 'w'")
        params["w"] = tuple(params["w"])
    fn = builder(alphabet, params)
    label = ",".join(f"{k}={_param_label(params[k])}" for k in names if k in params)
    return VariadicFn(f"{key}({label})" if label else key, fn, dict(params))


def patch(f: VariadicFn, overrides: Mapping[Word, OutputValue], name: str | None = None) -> VariadicFn:
    table = {tuple(k): v for k, v in overrides.items()}
    base = f.fn

    def g(w):
        v = table.get(w)
        return base(w) if v is None else v

    if name is None:
        shown = "; ".join(f"{render_word(k)}->{render_value(v)}" for k, v in table.items())
        name = f"patch({f.name}, {{{shown}}})"
    return VariadicFn(name, g, {"base": f.name, "overrides": table})


_NONWORD = Opaque("compose:nonword")


def compose(outer: VariadicFn, inner: VariadicFn) -> VariadicFn:
    o, i = outer.fn, inner.fn

    def h(w):
        v = i(w)
        return o(v) if is_word(v) else _NONWORD

    return VariadicFn(f"{outer.name}∘{inner.name}", h, {"outer": outer.name, "inner": inner.name})


def memoized(f: VariadicFn) -> VariadicFn:
    """Same function with a private evaluation cache."""
    cache: dict = {}
    base = f.fn

    def g(w):
        try:
            return cache[w]
        except KeyError:
            v = cache[w] = base(w)
            return v

    return VariadicFn(f.name, g, f.params)


def from_table(name: str, table: Mapping[Word, OutputValue], fallback: VariadicFn | None = None) -> VariadicFn:
    """Total function from a finite table; words outside it go to ``fallback``
    (identity by default)."""
    table = dict(table)
    fb = fallback.fn if fallback is not None else (lambda w: w)

    def f(w):
        v = table.get(w)
        return fb(w) if v is None else v

    return VariadicFn(name, f, {"table_size": len(table)})


__all__ = [
    "VariadicFn", "ENTRIES", "instantiate", "patch", "compose", "memoized",
    "from_table",
]
