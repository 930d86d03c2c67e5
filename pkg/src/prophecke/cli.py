"""Command-line driver: element arithmetic, verification suites, exports.

Exit codes: 0 success, 1 a verification suite reported failures,
2 unusable input (parse errors, mismatched group/field data, violated
suite preconditions).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import product as iproduct

from . import __version__
from .errors import (
    DataIntegrityError,
    DecompositionUnavailableError,
    GroupMismatchError,
    UnsupportedFieldError,
)
from .hecke import AffineCharacter
from .propweyl import basis_elements
from .serial import (
    canonical_json,
    hecke_elt_from_json,
    propelt_from_json,
)
from .verify import SUITES, build_context, run_suite

SEED_ENV = "PROPHECKE_SEED"


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_seed(args, config) -> tuple[int, str]:
    if args.seed is not None:
        return args.seed, "flag"
    if SEED_ENV in os.environ:
        return int(os.environ[SEED_ENV]), f"env:{SEED_ENV}"
    return config.get("seed", 0), "config"


def _context_from_args(args):
    config = _load_json(args.config)
    seed, seed_source = _resolve_seed(args, config)
    config["seed"] = seed
    if getattr(args, "max_len", None) is not None:
        config["max_len"] = args.max_len
    if getattr(args, "samples", None) is not None:
        config["samples"] = args.samples
    ctx = build_context(config)
    ctx.config["seed_source"] = seed_source
    return ctx


def cmd_mul(args) -> int:
    ctx = _context_from_args(args)
    a = _load_json(args.a)
    b = _load_json(args.b)
    if args.algebra == "hecke":
        x = hecke_elt_from_json(ctx.hecke, a)
        y = hecke_elt_from_json(ctx.hecke, b)
        result = (x * y).to_json()
    else:
        x = propelt_from_json(ctx.group, a)
        y = propelt_from_json(ctx.group, b)
        result = ctx.group.mul(x, y).to_json()
    payload = {
        "algebra": args.algebra,
        "config": ctx.config,
        "version": __version__,
        "result": result,
    }
    _emit(canonical_json(payload), args.out)
    return 0


def cmd_verify(args) -> int:
    ctx = _context_from_args(args)
    params = {}
    if args.max_len is not None:
        params["max_len"] = args.max_len
    if args.samples is not None and args.suite in ("assoc", "duality", "involutions"):
        params["samples"] = args.samples
    report = run_suite(ctx, args.suite, **params)
    report["config"] = ctx.config
    report["version"] = __version__
    if args.json or args.out:
        _emit(canonical_json(report), args.out)
    else:
        status = "PASS" if not report["failures"] else "FAIL"
        sys.stdout.write(
            f"{report['suite']}: {status} ({report['cases']} cases, "
            f"{len(report['failures'])} failures, seed {report['seed']})\n"
        )
        for f in report["failures"][:50]:
            sys.stdout.write(f"  {f}\n")
    return 0 if not report["failures"] else 1


def _export_payload(ctx, what: str, max_len: int):
    G, H, E = ctx.group, ctx.hecke, ctx.top
    if what == "hecke_table":
        basis = basis_elements(G, max_len)
        rows = []
        for v in basis:
            for w in basis:
                prod = H.mul(H.tau(v), H.tau(w))
                rows.append(
                    {"v": v.to_json(), "w": w.to_json(), "product": prod.to_json()["terms"]}
                )
        return {"rows": rows, "basis_size": len(basis)}
    if what == "topmod_table":
        basis = basis_elements(G, max_len)
        gens = [("n_s", s, H.tau(G.lift_s(s))) for s in range(len(G.weyl.s_aff))]
        rows = []
        for u in basis:
            ph = E.phi(u)
            for kind, s, tg in gens:
                for side in ("left", "right"):
                    rows.append(
                        {
                            "phi": u.to_json(),
                            "gen": {"kind": kind, "s": s},
                            "side": side,
                            "result": E.act(tg, ph, side).to_json()["terms"],
                        }
                    )
        return {"rows": rows, "basis_size": len(basis)}
    if what == "omega":
        om = ctx.weyl.omega()
        out = {
            "finite": om.finite,
            "invariants": list(om.invariants),
        }
        if om.finite:
            out["order"] = om.order
            out["elements"] = [w.to_json() for w in om.elements]
        else:
            out["generators"] = [w.to_json() for w in om.generators]
        return out
    if what == "characters":
        qm1 = max(G.qm1, 1)
        n_aff = len(G.weyl.s_aff)
        rows = []
        for lam in iproduct(range(qm1), repeat=G.rank):
            for eps in iproduct((0, -1), repeat=n_aff):
                try:
                    char = AffineCharacter(H, lam, eps)
                except ValueError:
                    continue
                cls = H.classify_character(char)
                rows.append({**char.to_json(), "class": cls.to_json()})
        return {"rows": rows, "torus_characters": qm1**G.rank}
    raise ValueError(f"unknown export {what!r}")


def cmd_export(args) -> int:
    ctx = _context_from_args(args)
    max_len = args.max_len if args.max_len is not None else ctx.max_len
    payload = _export_payload(ctx, args.what, max_len)
    payload["config"] = ctx.config
    payload["version"] = __version__
    payload["what"] = args.what
    _emit(canonical_json(payload), args.out)
    return 0


def cmd_coset(args) -> int:
    from . import cosets

    ctx = _context_from_args(args)
    if args.action == "support":
        if args.b is None:
            raise ValueError("coset support needs two element files")
        v = propelt_from_json(ctx.group, _load_json(args.a))
        w = propelt_from_json(ctx.group, _load_json(args.b))
        sup = cosets.support_mul(v, w)
        payload = {
            "classes": sup.to_json(),
            "count": len(sup),
            "index_v": cosets.index(ctx.group, v),
            "index_w": cosets.index(ctx.group, w),
        }
    else:  # profile
        elt = _load_json(args.a)
        w = ctx.weyl.from_word(elt.get("w0_word", []), elt.get("mu"))
        profile = cosets.g_profile(w)
        payload = {
            **profile.to_json(ctx.rd),
            "length": w.length(),
            "sum_check": cosets.g_profile_sum_check(w),
        }
    payload["config"] = ctx.config
    payload["version"] = __version__
    _emit(canonical_json(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="prophecke",
        description="exact pro-p Iwahori-Hecke algebra toolkit",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True, help="run configuration JSON")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--max-len", dest="max_len", type=int, default=None)
        sp.add_argument("--samples", type=int, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--json", action="store_true")

    mp = sub.add_parser("mul", help="multiply two elements")
    common(mp)
    mp.add_argument("--algebra", choices=("hecke", "propweyl"), default="hecke")
    mp.add_argument("a")
    mp.add_argument("b")
    mp.set_defaults(func=cmd_mul)

    vp = sub.add_parser("verify", help="run a verification suite")
    common(vp)
    vp.add_argument("suite", choices=SUITES)
    vp.set_defaults(func=cmd_verify)

    ep = sub.add_parser("export", help="export deterministic tables")
    common(ep)
    ep.add_argument(
        "what", choices=("hecke_table", "topmod_table", "omega", "characters")
    )
    ep.set_defaults(func=cmd_export)

    cp = sub.add_parser("coset", help="double-coset supports and profiles")
    common(cp)
    cp.add_argument("action", choices=("support", "profile"))
    cp.add_argument("a", help="element JSON (pro-p for support, Weyl for profile)")
    cp.add_argument("b", nargs="?", default=None)
    cp.set_defaults(func=cmd_coset)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; propagate others
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (
        ValueError,
        KeyError,
        IndexError,
        TypeError,
        OSError,
        json.JSONDecodeError,
        GroupMismatchError,
        UnsupportedFieldError,
        DataIntegrityError,
        DecompositionUnavailableError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
