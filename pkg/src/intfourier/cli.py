"""Command-line entry point.

Output is JSON on stdout by default (``--format text`` for aligned
tables). Exit code 0 means every check passed, 1 means a mathematical
check failed and 2 means a usage error. Progress goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import beauville, char_calculus, identities, oracle, sl2, suite
from .errors import DomainError, InvariantFailure
from .lambda_arith import big_t
from .reports import IdentityReport

OUTPUT_DIR_ENV = "INTFOURIER_OUTPUT_DIR"
MODEL_G_MAX = 8
ORACLE_G_MAX = 3

log = logging.getLogger("intfourier")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    parameters: dict[str, Any]
    output: str | None = None
    format: str = "json"
    timings: bool = False


@dataclass
class Outcome:
    """What a command produced: reports (checked) and/or table rows."""

    reports: list[IdentityReport] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


# ---------------------------------------------------------------------------
# commands


def _range(name: str, value: int, lo: int, hi: int | None = None):
    if value < lo or (hi is not None and value > hi):
        bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise UsageError(f"--{name} must be in {bound}, got {value}")


def _poly_rows(label: str, polys) -> list[dict]:
    return [{label: k, "polynomial": str(p), "terms": p.to_json()} for k, p in polys]


def cmd_tm(p) -> Outcome:
    _range("max", p["max"], 0, 200)
    return Outcome(rows=[{"m": m, "T": big_t(m)} for m in range(p["max"] + 1)])


def cmd_todd(p) -> Outcome:
    _range("max-deg", p["max_deg"], 0, 12)
    rows = []
    for m in range(p["max_deg"] + 1):
        poly = char_calculus.ftd(m, p["rank"])
        rows.append({"m": m, "T": big_t(m), "polynomial": str(poly), "terms": poly.to_json()})
    return Outcome(rows=rows)


def cmd_chern_char(p) -> Outcome:
    _range("max-deg", p["max_deg"], 0, 12)
    return Outcome(rows=_poly_rows("m", [(m, char_calculus.chern_char_component(m)) for m in range(p["max_deg"] + 1)]))


def cmd_ftd_inv(p) -> Outcome:
    _range("rank", p["rank"], 1, 12)
    _range("max-deg", p["max_deg"], 0, 12)
    return Outcome(rows=_poly_rows("n", [(n, char_calculus.ftd_inv(p["rank"], n)) for n in range(p["max_deg"] + 1)]))


def cmd_fct(p) -> Outcome:
    _range("max-deg", p["max_deg"], 0, 10)
    return Outcome(rows=_poly_rows("m", [(m, char_calculus.fct(m, p["rank"])) for m in range(p["max_deg"] + 1)]))


def cmd_verify_identities(p) -> Outcome:
    _range("rank", p["rank"], 1, 6)
    _range("max-deg", p["max_deg"], 0, identities.MAX_CAP)
    return Outcome(reports=identities.verify_all_identities(p["rank"], p["max_deg"]))


def cmd_verify_key_collapse(p) -> Outcome:
    _range("g", p["g"], 1, 3)
    _range("mu-max", p["mu_max"], 0, 3)
    return Outcome(reports=suite.key_collapse_reports((p["g"],), p["mu_max"]))


def cmd_verify_pappas(p) -> Outcome:
    if p["g"] is None:
        return Outcome(reports=[suite.pappas_report()])
    _range("g", p["g"], 1, 12)
    _range("n", p["n"], 0, 12 - p["g"])
    return Outcome(reports=[identities.pappas_shape_check(p["g"], p["n"])])


def cmd_projectors(p) -> Outcome:
    _range("g", p["g"], 1, MODEL_G_MAX)
    _range("d", p["d"], 0, 4)
    rep = beauville.projector_report(p["g"], p["d"])
    rows = rep.details.pop("coefficients")
    return Outcome(reports=[rep], rows=rows)


def cmd_fourier_check(p) -> Outcome:
    _range("g", p["g"], 1, MODEL_G_MAX)
    _range("nu", p["nu"], 1)
    m = beauville.build_model(p["g"], p["nu"])
    theta = IdentityReport("theta-fourier", {"g": p["g"], "nu": p["nu"]})
    if not beauville.theta_fourier_check(m):
        theta.failures.append("theta^* F(exp l) != nu exp(-l)")
    reports = [theta]
    rows = []
    if p["nu"] == 1:
        reports.insert(0, beauville.model_report(p["g"]))
        rows = [
            {"i": i, "F(l^i/i!)": str(beauville.fourier(b))} for i, b in enumerate(m.basis())
        ]
    return Outcome(reports=reports, rows=rows, extra={"ring": str(m.ring)})


def cmd_oracle_check(p) -> Outcome:
    _range("g", p["g"], 1, ORACLE_G_MAX)
    return Outcome(reports=[oracle.oracle_report(p["g"]), suite.nilpotency_report(p["g"])])


def _load_module(p) -> sl2.Sl2Module:
    if p["input"]:
        try:
            data = json.loads(Path(p["input"]).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read module: {exc}") from exc
        return sl2.Sl2Module.from_json(data)
    if p["sym"] is None:
        raise UsageError("give --input FILE or --sym N")
    g = p["g"] or max(p["sym"], 1)
    return sl2.sym_power(p["sym"], g)


def cmd_sl2_decompose(p) -> Outcome:
    v = _load_module(p)
    dec = sl2.decompose(v)
    rep = IdentityReport("sl2-decompose", {"g": v.g})
    rep.failures += sl2.primitive_string_checks(v)
    rows = [{**c.to_json(), "type": str(c.type)} for c in dec.nonzero()]
    return Outcome(reports=[rep], rows=rows, extra={"decomposition": dec.to_json()})


def cmd_sl2_flek(p) -> Outcome:
    _range("n-max", p["n_max"], 0, 8)
    rep = IdentityReport("flek-closed-form", {"nMax": p["n_max"]})
    rows = []
    for n in range(p["n_max"] + 1):
        bad = sl2.flek_matrix_check(n)
        if bad:
            rep.failures.append(f"Sym^{n}: {bad}")
        for k in range(n + 1):
            for l in range(k + 2):
                rows.append({"n": n, "k": k, "l": l, "coefficient": sl2.flek_coefficient(n, k, l)})
    reports = [rep]
    if p["input"] or p["sym"] is not None:
        reports.append(sl2.verify_flek(_load_module(p)))
    return Outcome(reports=reports, rows=rows)


def cmd_demo_torsion(p) -> Outcome:
    _range("g", p["g"], 1, MODEL_G_MAX)
    _range("k", p["k"], 1, 6)
    return Outcome(reports=[sl2.torsion_injectivity_demo(p["g"], p["p"], p["k"])])


def cmd_suite(p) -> Outcome:
    cfg = suite.SuiteConfig(sl2_seeds=p["seeds"])
    groups: list[tuple[str, Callable[[], Any]]] = [
        ("tm-table", suite.tm_table_report),
        ("integrality", lambda: suite.integrality_report(cfg)),
        ("lemma-n", lambda: suite.lemma_n_report(cfg.lemma_max)),
        ("identities", lambda: suite.identity_ledger_reports(cfg.max_rank, cfg.max_deg)),
        ("key-collapse", suite.key_collapse_reports),
        ("pappas-shape", suite.pappas_report),
        ("projectors", lambda: suite.projector_reports(cfg.projector_g, cfg.projector_d)),
        ("fourier-model", lambda: suite.fourier_model_reports(cfg.model_g)),
        ("oracle", lambda: suite.oracle_reports(cfg.oracle_g)),
        ("sl2-round-trip", lambda: suite.sl2_round_trip_report(cfg.sl2_g, cfg.sl2_seeds)),
        ("flek", lambda: suite.flek_report(cfg.flek_n)),
        ("chow-sl2", lambda: suite.chow_sl2_report(cfg.model_g)),
    ]
    reports = []
    for name, run in groups:
        log.info("suite: %s", name)
        out = run()
        reports += out if isinstance(out, list) else [out]
    return Outcome(reports=reports)


COMMANDS: dict[str, Callable[[dict], Outcome]] = {
    "tm": cmd_tm,
    "todd": cmd_todd,
    "chern-char": cmd_chern_char,
    "ftd-inv": cmd_ftd_inv,
    "fct": cmd_fct,
    "verify identities": cmd_verify_identities,
    "verify key-collapse": cmd_verify_key_collapse,
    "verify pappas-shape": cmd_verify_pappas,
    "projectors": cmd_projectors,
    "fourier-check": cmd_fourier_check,
    "oracle-check": cmd_oracle_check,
    "sl2 decompose": cmd_sl2_decompose,
    "sl2 flek": cmd_sl2_flek,
    "demo torsion": cmd_demo_torsion,
    "suite": cmd_suite,
}


# ---------------------------------------------------------------------------
# parsing and output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--output", help=f"write here instead of stdout (default: ${OUTPUT_DIR_ENV}/<command>.json if set)")
    common.add_argument("--timings", action="store_true", help="include elapsed seconds (breaks byte-identical output)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="intfourier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(parent, name, **kw):
        return parent.add_parser(name, parents=[common], **kw)

    a = add(sub, "tm", help="table of T_m")
    a.add_argument("--max", type=int, default=6)
    a = add(sub, "todd", help="fTd_m = T_m Td_m")
    a.add_argument("--max-deg", type=int, default=4)
    a.add_argument("--rank", type=int, default=None, help="set c_i = 0 above this rank")
    a = add(sub, "chern-char", help="fs_m = m! ch_m")
    a.add_argument("--max-deg", type=int, default=4)
    a = add(sub, "ftd-inv", help="fTd^inv_n of a rank-r bundle")
    a.add_argument("--rank", type=int, default=1)
    a.add_argument("--max-deg", type=int, default=4)
    a = add(sub, "fct", help="fCT_m")
    a.add_argument("--max-deg", type=int, default=3)
    a.add_argument("--rank", type=int, default=None)

    verify = sub.add_parser("verify", help="symbolic identity checks").add_subparsers(dest="sub", required=True)
    a = add(verify, "identities", help="the four Todd-class identities")
    a.add_argument("--rank", type=int, default=2)
    a.add_argument("--max-deg", type=int, default=4)
    a = add(verify, "key-collapse", help="quadruple -> double sum -> T_2g [mu=0]")
    a.add_argument("--g", type=int, default=1)
    a.add_argument("--mu-max", type=int, default=3)
    a = add(verify, "pappas-shape", help="integrality of structural constants")
    a.add_argument("--g", type=int, default=None, help="omit to check all g+n <= 12")
    a.add_argument("--n", type=int, default=0)

    a = add(sub, "projectors", help="coefficients a_{i,n} of the projectors")
    a.add_argument("--g", type=int, default=1)
    a.add_argument("--d", type=int, default=0)
    a = add(sub, "fourier-check", help="Fourier/Pontryagin identities on the tautological model")
    a.add_argument("--g", type=int, default=2)
    a.add_argument("--nu", type=int, default=1)
    a = add(sub, "oracle-check", help="exterior-algebra oracle (g <= 3)")
    a.add_argument("--g", type=int, default=1)

    s = sub.add_parser("sl2", help="integral sl2-modules").add_subparsers(dest="sub", required=True)
    for name, hint in (("decompose", "isotypic decomposition"), ("flek", "f^l e^k coefficients")):
        a = add(s, name, help=hint)
        a.add_argument("--input", help="module JSON file")
        a.add_argument("--sym", type=int, default=None, help="use Sym^n(St) instead of --input")
        a.add_argument("--g", type=int, default=None)
        if name == "flek":
            a.add_argument("--n-max", type=int, default=6)

    d = sub.add_parser("demo", help="demonstrations").add_subparsers(dest="sub", required=True)
    a = add(d, "torsion", help="injectivity of e^{i-1} on torsion")
    a.add_argument("--g", type=int, default=2)
    a.add_argument("--p", type=int, default=7)
    a.add_argument("--k", type=int, default=2)

    a = add(sub, "suite", help="every check at desk scale")
    a.add_argument("--seeds", type=int, default=100, help="random modules per g")
    return parser


def parse(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    command = ns.command + (f" {ns.sub}" if getattr(ns, "sub", None) else "")
    skip = {"command", "sub", "format", "output", "timings", "verbose"}
    params = {k: v for k, v in vars(ns).items() if k not in skip}
    if ns.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    return RunConfig(command, params, ns.output, ns.format, ns.timings)


def render_json(cfg: RunConfig, out: Outcome) -> str:
    doc = {
        "command": cfg.command,
        "parameters": {k: v for k, v in sorted(cfg.parameters.items())},
        "status": "pass" if out.passed else "fail",
    }
    if out.reports:
        doc["reports"] = [r.to_json(cfg.timings) for r in out.reports]
    if out.rows:
        doc["rows"] = out.rows
    doc.update(out.extra)
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _table(rows: list[dict]) -> list[str]:
    cols = []
    for r in rows:
        for k, v in r.items():
            if k not in cols and not isinstance(v, (list, dict)):
                cols.append(k)
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return lines


def render_text(cfg: RunConfig, out: Outcome) -> str:
    lines = [f"# {cfg.command}  status: {'pass' if out.passed else 'fail'}"]
    if out.reports:
        rows = []
        for r in out.reports:
            row = {"check": r.identity_name, "parameters": json.dumps(r.parameters, sort_keys=True), "status": r.status}
            if cfg.timings:
                row["seconds"] = f"{r.elapsed:.3f}"
            rows.append(row)
        lines += _table(rows)
        for r in out.reports:
            for f in r.failures:
                lines.append(f"  ! {r.identity_name}: {f}")
            if not r.residual.is_zero():
                lines.append(f"  ! {r.identity_name} residual: {r.residual}")
    if out.rows:
        if out.reports:
            lines.append("")
        lines += _table(out.rows)
    return "\n".join(lines) + "\n"


def destination(cfg: RunConfig) -> Path | None:
    if cfg.output:
        return Path(cfg.output)
    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        suffix = "json" if cfg.format == "json" else "txt"
        return Path(env) / f"{cfg.command.replace(' ', '-')}.{suffix}"
    return None


def dispatch(cfg: RunConfig) -> tuple[int, str]:
    """Run a command; returns (exit code, rendered output)."""
    try:
        out = COMMANDS[cfg.command](cfg.parameters)
    except (UsageError, DomainError) as exc:
        return 2, f"error: {exc}\n"
    except InvariantFailure as exc:
        out = Outcome(reports=[IdentityReport(cfg.command, cfg.parameters, failures=[str(exc)])])
    text = render_json(cfg, out) if cfg.format == "json" else render_text(cfg, out)
    return (0 if out.passed else 1), text


def main(argv=None) -> int:
    cfg = parse(sys.argv[1:] if argv is None else argv)
    code, text = dispatch(cfg)
    if code == 2:
        sys.stderr.write(text)
        return code
    dest = destination(cfg)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
        log.info("wrote %s", dest)
    return code
