"""Command-line front end.

Every command writes one JSON report to standard output (or a text rendering
with ``--pretty``).  Exit status: 0 on success or a passed check, 1 on a
refuted check or a failed factorization, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import catalogue, config as configmod, domains
from .checkers import (
    DDETERMINED, DVALUED, PLAIN, PRIMED, Refuted, Verdict, check_condition3, check_eq1,
    check_eq2, check_idempotent_on, check_m_determined_criterion, check_range,
)
from .factorization import factorize
from .hierarchy import FAMILIES, degree_line, patch_generator, profile, separation_search
from .words import ConfigError, render_value, render_word


class UsageError(ConfigError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def verdict_doc(v: Verdict) -> dict:
    doc = {"check": v.check, "status": "refuted" if v.refuted else "passed", "bound": v.bound}
    if isinstance(v, Refuted):
        ce = v.ce
        c = {"kind": ce.kind, "x": render_word(ce.x), "y": render_word(ce.y)}
        if ce.yprime is not None:
            c["yprime"] = render_word(ce.yprime)
        c["z"] = render_word(ce.z)
        c["lhs"] = render_value(ce.lhs)
        c["rhs"] = render_value(ce.rhs)
        if ce.witness_d is not None:
            c["witness_d"] = render_word(ce.witness_d)
        if ce.detail:
            c["detail"] = ce.detail
        doc["counterexample"] = c
    else:
        doc["cases_checked"] = v.cases_checked
        doc["note"] = "bounded check, not a proof"
    if v.params.get("mode") == PRIMED:
        doc["domain_bound"] = v.params["domain_bound"]
    return doc


def _pretty(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_pretty(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(line for line in lines if line)


def _bound(args, cfg, key="bound"):
    v = getattr(args, key, None)
    return cfg.defaults[key] if v is None else v


def _cmd_check(args, cfg):
    F = cfg.function(args.fn)
    bound = _bound(args, cfg)
    workers = _bound(args, cfg, "workers")
    cls = args.cls
    if cls == "cond3":
        v = check_condition3(F, cfg.alphabet, args.m, bound)
    elif cls == "mdet":
        v = check_m_determined_criterion(F, cfg.alphabet, args.m, bound)
    else:
        D = cfg.domain(args.domain)
        if cls == "A":
            v = check_eq1(F, D, PLAIN, bound, workers=workers)
        elif cls == "Ap":
            v = check_eq1(F, D, PRIMED, bound, _bound(args, cfg, "domain_bound"), workers=workers)
        elif cls == "P":
            v = check_eq2(F, D, PLAIN, bound, workers=workers)
        elif cls == "Pp":
            v = check_eq2(F, D, PRIMED, bound, workers=workers)
        elif cls == "idem":
            v = check_idempotent_on(F, D, bound)
        elif cls == "dvalued":
            v = check_range(F, D, DVALUED, bound)
        else:
            v = check_range(F, D, DDETERMINED, bound)
    return {"function": args.fn, "verdict": verdict_doc(v)}, (1 if v.refuted else 0)


def _profile_doc(p) -> dict:
    return {
        "family": p.family,
        "per_m": [{"m": m, **verdict_doc(v)} for m, v in p.per_m],
        "k_observed": p.k_observed,
        "degree": None if p.degree is None else str(p.degree),
        "monotone": p.monotone(),
        "note": p.note,
    }


def _cmd_profile(args, cfg):
    F = cfg.function(args.fn)
    bound = _bound(args, cfg)
    p = profile(F, args.family, cfg.alphabet, bound, _bound(args, cfg, "max_m"), _bound(args, cfg, "workers"))
    return {"function": args.fn, "profile": _profile_doc(p)}, 0


def _cmd_degree(args, cfg):
    F = cfg.function(args.fn)
    bound = _bound(args, cfg)
    p = profile(F, args.family, cfg.alphabet, bound, _bound(args, cfg, "max_m"), _bound(args, cfg, "workers"))
    return {"function": args.fn, "family": args.family, "degree": degree_line(p),
            "k_observed": p.k_observed}, 0


def _cmd_factorize(args, cfg):
    F = cfg.function(args.fn)
    bound = _bound(args, cfg)
    D = cfg.domain(args.domain) if args.domain else None
    fz = factorize(F, cfg.alphabet, bound, D, workers=_bound(args, cfg, "workers"))
    doc = {
        "function": args.fn,
        "domain": args.domain,
        "quasi_inverse": {render_value(v): render_word(w) for v, w in fz.g.g.items()},
        "H": {render_word(w): render_word(h) for w, h in fz.H.entries.items()},
        "f": {render_word(u): render_value(v) for u, v in fz.f.items()},
        "checklist": fz.report,
        "verdicts": {k: verdict_doc(v) for k, v in fz.verdicts.items()},
    }
    ok = fz.report["a_f_injective"] and fz.report["b_mismatches"] == 0
    return doc, (0 if ok else 1)


def _cmd_catalogue(args, cfg):
    entries = [{"key": key, "params": list(names), "anchor": anchor}
               for key, (_, anchor, names) in catalogue.ENTRIES.items()]
    configured = {name: fn.params.get("definition", name) for name, fn in cfg.functions.items()}
    return {"entries": entries, "configured": configured}, 0


def _cmd_separate(args, cfg):
    pair = tuple(args.classes.split(","))
    if len(pair) != 2 or any(p not in FAMILIES for p in pair):
        raise UsageError(f"--classes expects two of {','.join(FAMILIES)}, got {args.classes!r}")
    alphabet = cfg.alphabet
    if args.letters:
        alphabet = alphabet.restrict([c for c in (cfg.alphabet.letters) if str(c) in args.letters.split(",")])
    D = cfg.domain(args.domain)
    D = domains.DomainSet(D.kind, alphabet, D.arg)
    base = cfg.function(args.base)
    gen = patch_generator(base, alphabet, args.in_len, args.out_len, args.max_points)
    bound = _bound(args, cfg)
    found = separation_search(pair, D, gen, bound)
    doc = {"classes": list(pair), "domain": args.domain, "bound": bound,
           "letters": [str(c) for c in alphabet.letters], "found": None}
    if found is not None:
        doc["found"] = found.name
    return doc, 0


def _cmd_suite(args, cfg):
    bound = _bound(args, cfg)
    max_m = _bound(args, cfg, "max_m")
    out = []
    for name, F in cfg.functions.items():
        row = {"function": name}
        for family in ("A", "P"):
            p = profile(F, family, cfg.alphabet, bound, max_m, _bound(args, cfg, "workers"))
            row[family] = {"levels": ["refuted" if v.refuted else "passed" for _, v in p.per_m],
                           "degree": degree_line(p)}
        out.append(row)
    return {"suite": out}, 0


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand
    shared = _Parser(add_help=False)
    shared.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON configuration document (default: built-in scenario set)")
    shared.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable rendering")
    shared.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="report elapsed time on stderr")

    p = _Parser(prog="wordassoc", description=__doc__.splitlines()[0], parents=[shared])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[shared], **kw)

    sub.add_parser = add_parser

    def common(sp):
        sp.add_argument("--bound", type=int)
        sp.add_argument("--workers", type=int)

    c = sub.add_parser("check")
    c.add_argument("--fn", required=True)
    c.add_argument("--class", dest="cls", required=True,
                   choices=["A", "Ap", "P", "Pp", "idem", "dvalued", "ddetermined", "cond3", "mdet"])
    c.add_argument("--domain", default="full")
    c.add_argument("--domain-bound", dest="domain_bound", type=int)
    c.add_argument("--m", type=int, default=0, help="level for cond3 / mdet")
    common(c)

    for name in ("profile", "degree"):
        s = sub.add_parser(name)
        s.add_argument("--fn", required=True)
        s.add_argument("--family", choices=FAMILIES if name == "profile" else ("A", "P"), default="A")
        s.add_argument("--max-m", dest="max_m", type=int)
        common(s)

    f = sub.add_parser("factorize")
    f.add_argument("--fn", required=True)
    f.add_argument("--domain")
    common(f)

    sub.add_parser("catalogue")

    s = sub.add_parser("separate")
    s.add_argument("--classes", required=True, help="two families, e.g. A,Ap")
    s.add_argument("--domain", required=True)
    s.add_argument("--base", default="identity")
    s.add_argument("--letters", help="comma-separated letters for the generator alphabet")
    s.add_argument("--in-len", dest="in_len", type=int, default=3)
    s.add_argument("--out-len", dest="out_len", type=int, default=2)
    s.add_argument("--max-points", dest="max_points", type=int, default=1)
    common(s)

    s = sub.add_parser("suite")
    s.add_argument("--max-m", dest="max_m", type=int)
    common(s)
    return p


COMMANDS = {
    "check": _cmd_check, "profile": _cmd_profile, "degree": _cmd_degree,
    "factorize": _cmd_factorize, "catalogue": _cmd_catalogue, "separate": _cmd_separate,
    "suite": _cmd_suite,
}


def run(argv: Optional[list] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand (check, profile, degree, factorize, catalogue, separate, suite)")
        cfg = configmod.load_path(args.config) if getattr(args, "config", None) else configmod.load(configmod.default_document())
        body, status = COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"wordassoc: error: {exc}", file=err)
        return 2
    report = {"command": argv, "config_digest": cfg.digest, **body}
    if getattr(args, "pretty", False):
        print(_pretty(report), file=out)
    else:
        print(json.dumps(report, indent=2, ensure_ascii=False), file=out)
    if getattr(args, "timing", False):
        print(f"elapsed: {time.perf_counter() - started:.3f}s", file=err)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
