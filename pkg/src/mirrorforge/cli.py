"""Batch front end.

Three working verbs plus a demo: ``compute`` writes one series or matrix,
``verify`` runs named identity suites and reports pass/fail, ``dump`` emits
structural artifacts as JSON, ``cohft-demo`` prints per-graph contributions
of the dressed field theory for each supported correlator shape.

Exit codes: 0 success, 1 a verification suite failed, 2 usage error,
3 internal cancellation failure (weight or root-of-unity content survived
where a plain rational was required).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter

from .cohft import (
    build_cohft_input,
    enumerate_stable_graphs,
    frame_basis_vector,
    frame_phi0,
    graph_contributions,
    verify_appendix,
)
from .exactnum import CancellationError
from .frob import build_frame, build_product, verify_frobenius
from .genus1 import f1_closed_fjrw, f1_closed_twisted, verify_genus1
from .ifun import (
    FJRW,
    TWISTED,
    build_ifunction,
    ipq_table,
    l_series,
    l_series_in,
    mirror_map,
    picard_fuchs_check,
    verify_club_spade,
    verify_ipp,
    verify_zz_identity,
    yukawa,
)
from .loc import residue_check_C2, tail_extraction
from .report import Report
from .rmat import build_rmatrix, verify_diag_consistency, verify_flatness

DEFAULT_ORDER = 30
ORDER_ENV = "MIRRORFORGE_ORDER"

SUITE_NAMES = (
    "ipp",
    "zz",
    "clubspade",
    "pf",
    "yukawa",
    "frobenius",
    "rmatrix",
    "genus1",
    "appendix",
    "residues",
    "tails",
)
TARGET_NAMES = (
    "i0",
    "i1",
    "tau",
    "L",
    "f",
    "g",
    "yukawa",
    "delta",
    "r1",
    "f1",
)

# theory names on the command line; "lambda"/"w" are the star aliases
_THEORY_ALIASES = {"lambda": "twisted", "w": "fjrw"}
_STAR = {"twisted": "lambda", "fjrw": "w"}


class UsageError(Exception):
    """Bad flag combination caught after argparse."""


@dataclass
class RunConfig:
    order: int = DEFAULT_ORDER
    theory: str = "fjrw"
    fmt: str = "text"
    out: str | None = None
    kmax: int | None = None
    dmax: int | None = None
    jobs: int = 1

    @property
    def flag(self) -> str:
        if self.theory == "both":
            raise UsageError("this target computes one theory at a time")
        return TWISTED if self.theory == "twisted" else FJRW


def _resolve_order(explicit: int | None) -> int:
    if explicit is not None:
        if explicit < 0:
            raise UsageError("order must be nonnegative")
        return explicit
    env = os.environ.get(ORDER_ENV)
    if env is None:
        return DEFAULT_ORDER
    try:
        n = int(env)
    except ValueError:
        raise UsageError(f"{ORDER_ENV}={env!r} is not an integer") from None
    if n < 6:
        raise UsageError(f"{ORDER_ENV} must be at least 6, got {n}")
    return n


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


# -- compute -------------------------------------------------------------


def _series_for_target(target: str, cfg: RunConfig):
    """The one truncated series a target denotes, or a structured payload.

    Returns (series, None) or (None, json-ready dict) for matrix-shaped
    targets that have no single-series form.
    """
    N = cfg.order
    if target in ("i0", "i1"):
        kmax = max(cfg.kmax or 1, 1)
        tab = build_ifunction(kmax, max(N, 1), cfg.flag)
        return tab.component(0 if target == "i0" else 1).truncate(N), None
    if target == "tau":
        return mirror_map(N, cfg.flag), None
    if target == "L":
        if cfg.flag == FJRW:
            return l_series(N), None
        return l_series_in(N, TWISTED), None
    if target in ("f", "g"):
        if cfg.flag == FJRW:
            prod = build_product(N)
            return (prod.f if target == "f" else prod.g), None
        tab = ipq_table(4, 4, N + 4, TWISTED)
        p = 2 if target == "f" else 4
        return (tab.diagonal(p) / tab.diagonal(1)).truncate(N), None
    if target == "yukawa":
        Y, _ = yukawa(N, cfg.flag)
        return Y, None
    if target == "delta":
        frame = build_frame(N)
        return None, {
            "target": "delta",
            "order": N,
            "delta": [d.to_json() for d in frame.delta],
        }
    if target == "r1":
        return None, {"target": "r1", **build_rmatrix(N).to_json()}
    if target == "f1":
        if cfg.theory == "both":
            return None, {
                "target": "f1",
                "order": N,
                "twisted": f1_closed_twisted(N).to_json(),
                "fjrw": f1_closed_fjrw(N).to_json(),
            }
        fn = f1_closed_twisted if cfg.theory == "twisted" else f1_closed_fjrw
        return fn(N), None
    raise UsageError(f"unknown compute target {target!r}")


def _series_text(s, header: str) -> str:
    lines = [f"# {header}"]
    for k, c in enumerate(s.coeffs):
        if not s.ring.is_zero(c):
            if s.ring.name == "rational":
                body = str(c)
            else:
                body = json.dumps(s.ring.encode(c), sort_keys=True)
            lines.append(f"{s.var}^{k}\t{body}")
    return "\n".join(lines)


def cmd_compute(target: str, cfg: RunConfig) -> int:
    series, payload = _series_for_target(target, cfg)
    if payload is not None:
        if cfg.fmt != "json":
            raise UsageError(f"target {target!r} emits a JSON artifact; use --format json")
        _emit(json.dumps(payload, indent=2), cfg.out)
        return 0
    if cfg.fmt == "csv":
        try:
            _emit(series.to_csv(), cfg.out)
        except ValueError:
            raise UsageError(
                "CSV needs rational coefficients; this target/theory has twisted ones"
            ) from None
        return 0
    header = f"{target} theory={cfg.theory} order={cfg.order}"
    if cfg.fmt == "text":
        _emit(_series_text(series, header), cfg.out)
        return 0
    _emit(
        json.dumps(
            {
                "target": target,
                "theory": cfg.theory,
                "order": cfg.order,
                "series": series.to_json(),
            },
            indent=2,
        ),
        cfg.out,
    )
    return 0


# -- verify --------------------------------------------------------------


def _suite_residues(cfg: RunConfig):
    stars = {
        "both": ("lambda", "w"),
        "twisted": ("lambda",),
        "fjrw": ("w",),
    }[cfg.theory]
    rep = Report("residues")
    detail = []
    for star in stars:
        rr = residue_check_C2(cfg.dmax or 3, star)
        rep.absorb(rr.report)
        detail.append(rr.to_json())
    return rep, detail


def _suite_tails(cfg: RunConfig):
    tr = tail_extraction(max(cfg.order, 7))
    return tr.report, tr.to_json()


def _suite_rmatrix(cfg: RunConfig):
    rep = Report("rmatrix")
    rep.absorb(verify_flatness(cfg.order))
    rep.absorb(verify_diag_consistency(cfg.order))
    return rep, None


SUITES = {
    "ipp": lambda cfg: (verify_ipp(cfg.order), None),
    "zz": lambda cfg: (verify_zz_identity(cfg.order), None),
    "clubspade": lambda cfg: (verify_club_spade(cfg.dmax or 12), None),
    "pf": lambda cfg: (picard_fuchs_check(cfg.order), None),
    "yukawa": lambda cfg: (yukawa(cfg.order)[1], None),
    "frobenius": lambda cfg: (verify_frobenius(cfg.order), None),
    "rmatrix": _suite_rmatrix,
    "genus1": lambda cfg: (verify_genus1(cfg.order).report, None),
    "appendix": lambda cfg: (verify_appendix(cfg.order), None),
    "residues": _suite_residues,
    "tails": _suite_tails,
}


def _run_suite(name: str, cfg: RunConfig):
    t0 = perf_counter()
    rep, detail = SUITES[name](cfg)
    ms = int((perf_counter() - t0) * 1000)
    return name, rep, detail, ms


def _report_json(name: str, rep: Report, detail, ms: int) -> dict:
    obj = {
        "suite": name,
        "status": "pass" if rep.passed else "fail",
        "first_failure": rep.first_failure,
        "elapsed_ms": ms,
        "checks": rep.checks,
    }
    if detail is not None:
        obj["detail"] = detail
    return obj


def cmd_verify(names: list, cfg: RunConfig) -> int:
    if cfg.order < 6:
        raise UsageError("verification needs order >= 6")
    picked = []
    for n in names:
        expand = SUITE_NAMES if n == "all" else (n,)
        for s in expand:
            if s not in picked:
                picked.append(s)
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = [pool.submit(_run_suite, n, cfg) for n in picked]
            results = [f.result() for f in futures]
    else:
        results = [_run_suite(n, cfg) for n in picked]

    if cfg.fmt == "json":
        _emit(
            json.dumps(
                [_report_json(*r) for r in results],
                indent=2,
            ),
            cfg.out,
        )
    elif cfg.fmt == "csv":
        rows = ["suite,status,checks,elapsed_ms"]
        for name, rep, _, ms in results:
            rows.append(f"{name},{'pass' if rep.passed else 'fail'},{rep.checks},{ms}")
        _emit("\n".join(rows), cfg.out)
    else:
        lines = []
        for name, rep, _, ms in results:
            if rep.passed:
                lines.append(f"{name}: PASS ({rep.checks} checks, {ms} ms)")
            else:
                ff = rep.first_failure or {}
                lines.append(
                    f"{name}: FAIL at {ff.get('where')} order={ff.get('order')}"
                    f" ({rep.checks} checks, {ms} ms)"
                )
        _emit("\n".join(lines), cfg.out)
    return 0 if all(rep.passed for _, rep, _, _ in results) else 1


# -- dump ----------------------------------------------------------------


def cmd_dump(what: str, cfg: RunConfig, g: int | None, n: int | None) -> int:
    if cfg.fmt != "json":
        raise UsageError("dump emits JSON; use --format json")
    if what == "frame":
        payload = build_frame(cfg.order).to_json()
    elif what == "rmatrix":
        payload = build_rmatrix(cfg.order).to_json()
    elif what == "graphs":
        if g is None or n is None:
            raise UsageError("dump graphs needs --g and --n")
        try:
            payload = {
                "g": g,
                "n": n,
                "graphs": [G.to_json() for G in enumerate_stable_graphs(g, n)],
            }
        except ValueError as e:
            raise UsageError(str(e)) from None
    else:
        raise UsageError(f"unknown dump target {what!r}")
    _emit(json.dumps(payload, indent=2), cfg.out)
    return 0


# -- cohft demo ----------------------------------------------------------


def cmd_cohft_demo(cfg: RunConfig) -> int:
    data = build_cohft_input(cfg.order)
    blocks = []
    for g, n in ((0, 3), (0, 4), (1, 1)):
        if (g, n) == (1, 1):
            ins = [frame_phi0(cfg.order)]
            label = "phi0"
        else:
            ins = [frame_basis_vector(0, cfg.order)] * n
            label = "frame basis 0"
        # one psi power per excess moduli dimension, on the first point
        psis = ((1,) if (g, n) != (0, 3) else (0,)) + (0,) * (n - 1)
        parts = graph_contributions(g, n, ins, psis, data)
        blocks.append(
            {
                "g": g,
                "n": n,
                "insertions": label,
                "psi_exponents": list(psis),
                "graphs": [
                    {"name": G.name, "aut": G.aut, "contribution": val.to_json()}
                    for G, val in parts
                ],
            }
        )
    _emit(json.dumps({"order": cfg.order, "correlators": blocks}, indent=2), cfg.out)
    return 0


# -- wiring --------------------------------------------------------------


def _add_common(p, default_fmt="text"):
    p.add_argument("--order", type=int, default=None, help="truncation order in t")
    p.add_argument(
        "--format",
        dest="fmt",
        choices=("json", "csv", "text"),
        default=default_fmt,
    )
    p.add_argument("--out", default=None, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="mirrorforge",
        description="Exact genus-one mirror-symmetry series: compute, verify, dump.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    theories = ("twisted", "fjrw", "both", "lambda", "w")

    pc = sub.add_parser("compute", help="write one series or matrix")
    pc.add_argument("target", choices=TARGET_NAMES)
    _add_common(pc)
    pc.add_argument("--theory", choices=theories, default="fjrw")
    pc.add_argument("--kmax", type=int, default=None)

    pv = sub.add_parser("verify", help="run identity suites")
    pv.add_argument("suites", nargs="+", choices=SUITE_NAMES + ("all",))
    _add_common(pv)
    pv.add_argument("--theory", choices=theories, default="both")
    pv.add_argument("--kmax", type=int, default=None)
    pv.add_argument("--dmax", type=int, default=None)
    pv.add_argument("--jobs", type=int, default=1)

    pd = sub.add_parser("dump", help="emit a JSON artifact")
    pd.add_argument("what", choices=("frame", "rmatrix", "graphs"))
    _add_common(pd, default_fmt="json")
    pd.add_argument("--g", type=int, default=None)
    pd.add_argument("--n", type=int, default=None)

    pm = sub.add_parser(
        "cohft-demo", help="per-graph contributions for each supported shape"
    )
    _add_common(pm, default_fmt="json")

    return top


def _config_from(args) -> RunConfig:
    theory = getattr(args, "theory", "fjrw")
    theory = _THEORY_ALIASES.get(theory, theory)
    return RunConfig(
        order=_resolve_order(args.order),
        theory=theory,
        fmt=args.fmt,
        out=args.out,
        kmax=getattr(args, "kmax", None),
        dmax=getattr(args, "dmax", None),
        jobs=getattr(args, "jobs", 1) or 1,
    )


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from(args)
        if args.command == "compute":
            return cmd_compute(args.target, cfg)
        if args.command == "verify":
            return cmd_verify(args.suites, cfg)
        if args.command == "dump":
            return cmd_dump(args.what, cfg, args.g, args.n)
        return cmd_cohft_demo(cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CancellationError as e:
        print(f"internal cancellation failure: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
