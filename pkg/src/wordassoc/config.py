"""JSON configuration documents: alphabet, named functions, named domains."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict

from . import catalogue, domains
from .catalogue import VariadicFn
from .domains import DomainSet
from .words import Alphabet, ConfigError, Opaque, word

DEFAULT_BOUNDS = {"bound": 4, "domain_bound": None, "max_m": 3, "workers": 1}


def default_document() -> dict:
    """The stock scenario set: alphabet {a, b, v, c} ∪ {0, 1}, one function per
    catalogue key and m ∈ {0, 1, 2} where the entry accepts it, domains
    D_0..D_4, X*, repeated letters and X* ab X*."""
    fns = [
        {"name": "identity", "key": "identity"},
        {"name": "sort", "key": "sort"},
        {"name": "length", "key": "length"},
        {"name": "mean", "key": "mean"},
        {"name": "swap_ab", "key": "letterwise_perm", "params": {"sigma": {"a": "b", "b": "a"}}},
        {"name": "eps_to_a", "key": "eps_to_a", "params": {"a": "a"}},
        {"name": "collapse_eps_a", "key": "collapse_eps_a", "params": {"a": "a"}},
        {"name": "factor_marker_ab", "key": "factor_marker", "params": {"w": "ab"}},
        {"name": "factor_marker_a", "key": "factor_marker", "params": {"w": "a"}},
    ]
    for key, ms, stem in [
        ("prefix", (0, 1, 2), "prefix"),
        ("indexer", (0, 1, 2), "indexer"),
        ("ex23_F", (1, 2), "ex23_F"),
        ("ex23_G", (0, 1, 2), "ex23_G"),
        ("ex24", (1, 2), "ex24_"),
        ("drop_to_prefix_plus_prev", (1, 2), "drop_prev"),
    ]:
        for m in ms:
            fns.append({"name": f"{stem}{m}", "key": key, "params": {"m": m}})
    doms = {f"D{m}": {"kind": "maxlen", "m": m} for m in range(5)}
    doms.update({
        "full": {"kind": "full"},
        "repeats": {"kind": "repeats"},
        "factor_ab": {"kind": "factor", "w": "ab"},
    })
    return {
        "alphabet": {"symbols": ["a", "b", "v", "c"], "numeric_samples": ["0", "1"],
                     "vowels": ["a"], "case_map": {}},
        "functions": fns,
        "domains": doms,
        "defaults": dict(DEFAULT_BOUNDS),
    }


@dataclass
class Config:
    alphabet: Alphabet
    functions: Dict[str, VariadicFn]
    domains: Dict[str, DomainSet]
    defaults: dict
    digest: str
    document: dict = field(repr=False, default_factory=dict)

    def function(self, name: str) -> VariadicFn:
        try:
            return self.functions[name]
        except KeyError:
            raise ConfigError(f"unknown function {name!r}") from None

    def domain(self, name: str) -> DomainSet:
        try:
            return self.domains[name]
        except KeyError:
            raise ConfigError(f"unknown domain {name!r}") from None


def _value(text, alphabet: Alphabet):
    if isinstance(text, str) and text.startswith("opaque:"):
        return Opaque(text[len("opaque:"):])
    return word(text, alphabet)


def _params(key: str, raw: dict, alphabet: Alphabet) -> dict:
    params = dict(raw)
    if key == "factor_marker" and "w" in params:
        params["w"] = word(params["w"], alphabet)
    return params


def _build_domain(name: str, spec: dict, alphabet: Alphabet) -> DomainSet:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"domain {name!r}: missing 'kind'")
    kind = spec["kind"]
    extra = set(spec) - {"kind", "m", "w", "s", "words"}
    if extra:
        raise ConfigError(f"domain {name!r}: unknown keys {sorted(extra)}")
    if kind in ("maxlen", "minlen"):
        return domains.DomainSet(kind, alphabet, spec.get("m"))
    if kind == "factor":
        return domains.factor(alphabet, word(spec.get("w", ""), alphabet))
    if kind == "threshold":
        return domains.threshold(alphabet, spec.get("s"))
    if kind == "explicit":
        return domains.explicit(alphabet, [word(w, alphabet) for w in spec.get("words", [])])
    return domains.DomainSet(kind, alphabet)


def load(document: dict) -> Config:
    """Validate a configuration document and resolve every name."""
    if not isinstance(document, dict):
        raise ConfigError("configuration must be a JSON object")
    extra = set(document) - {"alphabet", "functions", "domains", "defaults"}
    if extra:
        raise ConfigError(f"unknown top-level keys {sorted(extra)}")
    a = document.get("alphabet", {})
    alphabet = Alphabet(
        symbols=tuple(a.get("symbols", ())),
        numeric_samples=tuple(a.get("numeric_samples", ())),
        vowel_set=frozenset(a.get("vowels", ())),
        case_map=a.get("case_map", {}),
    )
    if not alphabet.letters:
        raise ConfigError("alphabet has no letters")

    fns: Dict[str, VariadicFn] = {}
    for entry in document.get("functions", []):
        name = entry.get("name")
        if not name or name in fns:
            raise ConfigError(f"function entries need unique names, got {name!r}")
        if "key" in entry:
            key = entry["key"]
            fn = catalogue.instantiate(key, alphabet, **_params(key, entry.get("params", {}), alphabet))
        elif "patch" in entry:
            base = fns.get(entry["patch"])
            if base is None:
                raise ConfigError(f"function {name!r}: unknown base {entry['patch']!r}")
            overrides = {word(k, alphabet): _value(v, alphabet) for k, v in entry.get("overrides", {}).items()}
            fn = catalogue.patch(base, overrides)
        elif "compose" in entry:
            outer, inner = entry["compose"]
            for ref in (outer, inner):
                if ref not in fns:
                    raise ConfigError(f"function {name!r}: unknown component {ref!r}")
            fn = catalogue.compose(fns[outer], fns[inner])
        else:
            raise ConfigError(f"function {name!r}: needs 'key', 'patch' or 'compose'")
        fns[name] = catalogue.VariadicFn(name, fn.fn, {"definition": fn.name})

    doms = {name: _build_domain(name, spec, alphabet) for name, spec in document.get("domains", {}).items()}
    doms.setdefault("full", domains.full(alphabet))

    defaults = dict(DEFAULT_BOUNDS)
    unknown = set(document.get("defaults", {})) - set(DEFAULT_BOUNDS)
    if unknown:
        raise ConfigError(f"unknown defaults {sorted(unknown)}")
    defaults.update(document.get("defaults", {}))

    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    digest = "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()
    return Config(alphabet, fns, doms, defaults, digest, document)


def load_path(path) -> Config:
    try:
        with open(path, encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return load(document)
