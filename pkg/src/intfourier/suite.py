"""Desk-scale verification suite shared by the CLI, scripts and tests.

Every function returns IdentityReports; nothing here prints.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial

from .beauville import build_model, model_report, projector_report, theta_fourier_check
from .char_calculus import fct, ftd, ftd_inv, todd_component
from .errors import InvariantFailure
from .identities import (
    pappas_shape_check,
    verify_binom_identity,
    verify_dual_identity,
    verify_exact_seq_identity,
    verify_key_collapse,
    verify_tdinv_identity,
)
from .lambda_arith import big_t, lemma_n
from .oracle import annihilation_exponent_check, oracle_report
from .reports import IdentityReport, timed
from .sl2 import (
    RandomModuleConfig,
    build_chow_sl2,
    default_ring,
    direct_sum,
    flek_matrix_check,
    parity_check,
    primitive_string_checks,
    random_module,
    round_trip,
    sym_power,
    torsion_injectivity_demo,
    verify_flek,
)

log = logging.getLogger("intfourier")

TODD_DENOMINATORS = {1: 2, 2: 12, 3: 24, 4: 720}


@dataclass(frozen=True)
class SuiteConfig:
    max_rank: int = 3
    max_deg: int = 6
    ftd_max: int = 10
    ftd_inv_rank: int = 4
    ftd_inv_deg: int = 8
    fct_max: int = 8
    lemma_max: int = 30
    model_g: int = 8
    oracle_g: int = 3
    projector_g: int = 3
    projector_d: int = 2
    sl2_g: int = 4
    sl2_seeds: int = 100
    flek_n: int = 6


def tm_table_report(max_m: int = 6) -> IdentityReport:
    """T_m against the lcd of the Todd polynomials."""
    report = IdentityReport("tm-table", {"max": max_m})
    with timed(report):
        table = {str(m): big_t(m) for m in range(max_m + 1)}
        for m in range(1, max_m + 1):
            lcd = todd_component(m).lcd()
            if lcd != big_t(m):
                report.failures.append(f"lcd(Td_{m}) = {lcd} != T_{m}")
            if m in TODD_DENOMINATORS and big_t(m) != TODD_DENOMINATORS[m]:
                report.failures.append(f"T_{m} != {TODD_DENOMINATORS[m]}")
        report.details["table"] = table
    return report


def integrality_report(cfg: SuiteConfig = SuiteConfig()) -> IdentityReport:
    report = IdentityReport(
        "integrality",
        {"ftdMax": cfg.ftd_max, "ftdInvRank": cfg.ftd_inv_rank, "ftdInvDeg": cfg.ftd_inv_deg, "fctMax": cfg.fct_max},
    )
    with timed(report):
        jobs = [(f"fTd_{m}", lambda m=m: ftd(m)) for m in range(cfg.ftd_max + 1)]
        jobs += [
            (f"fTdInv_{n}(r={r})", lambda r=r, n=n: ftd_inv(r, n))
            for r in range(1, cfg.ftd_inv_rank + 1)
            for n in range(cfg.ftd_inv_deg + 1)
        ]
        jobs += [(f"fCT_{m}", lambda m=m: fct(m)) for m in range(cfg.fct_max + 1)]
        for label, job in jobs:
            try:
                poly = job()
            except InvariantFailure as exc:
                report.failures.append(str(exc))
                continue
            if not poly.is_integral():
                report.failures.append(f"{label} is not integral")
        report.details["polynomials"] = len(jobs)
    return report


def lemma_n_report(h_max: int = 30) -> IdentityReport:
    report = IdentityReport("lemma-n", {"hMax": h_max})
    with timed(report):
        values = {}
        for h in range(1, h_max + 1):
            try:
                n = lemma_n(h)
            except InvariantFailure as exc:
                report.failures.append(str(exc))
                continue
            values[str(h)] = n
            if (n * factorial(h) ** 2) % big_t(h):
                report.failures.append(f"T_{h} does not divide N h!^2")
        report.details["N"] = values
    return report


def identity_ledger_reports(max_rank: int = 3, max_deg: int = 6) -> list[IdentityReport]:
    out = []
    for r1 in range(1, max_rank + 1):
        for r2 in range(1, max_rank + 1):
            log.info("exact-sequence r1=%d r2=%d", r1, r2)
            out.append(verify_exact_seq_identity(r1, r2, max_deg))
    for r in range(1, max_rank + 1):
        log.info("dual / todd-inverse r=%d", r)
        out.append(verify_dual_identity(r, max_deg))
        out.append(verify_tdinv_identity(r, max_deg))
    out.append(verify_binom_identity(max_deg))
    return sorted(out, key=lambda r: (r.identity_name, sorted(r.parameters.items())))


def key_collapse_reports(gs=(1, 2, 3), mu_max: int = 3) -> list[IdentityReport]:
    out = []
    for g in gs:
        rep = verify_key_collapse(g, mu_max)
        expected = {str(mu): str(big_t(2 * g) if mu == 0 else 0) for mu in range(mu_max + 1)}
        if rep.details["doubleSum"] != expected:
            rep.failures.append(f"double sums {rep.details['doubleSum']} != {expected}")
        out.append(rep)
    return out


def pappas_report(max_total: int = 12) -> IdentityReport:
    report = IdentityReport("pappas-shape-all", {"maxTotal": max_total})
    with timed(report):
        for g in range(1, max_total + 1):
            for n in range(0, max_total - g + 1):
                report.failures += pappas_shape_check(g, n).failures
    return report


def projector_reports(g_max: int = 3, d_max: int = 2) -> list[IdentityReport]:
    return [projector_report(g, d) for g in range(1, g_max + 1) for d in range(d_max + 1)]


def fourier_model_reports(g_max: int = 8) -> list[IdentityReport]:
    out = [model_report(g) for g in range(1, g_max + 1)]
    theta = IdentityReport("theta-fourier", {"gMax": g_max, "nu": [1, 2, 3, 5]})
    with timed(theta):
        for g in range(1, g_max + 1):
            for nu in (1, 2, 3, 5):
                if not theta_fourier_check(build_model(g, nu)):
                    theta.failures.append(f"theta^* F(exp l) != nu exp(-l) at g={g}, nu={nu}")
    out.append(theta)
    return out


def nilpotency_report(g: int) -> IdentityReport:
    """Annihilation of H^*(X) by powers of Gamma_[1] - Gamma_[0].

    Passes when exponent 2g+1 annihilates and 2g does not. The exponent
    min{g+d, 2g}+1 = g+1 taken with d = 0 is recorded in the details.
    """
    report = IdentityReport("gamma-nilpotency", {"g": g})
    with timed(report):
        sharp = annihilation_exponent_check(g, 2 * g + 1)
        below = annihilation_exponent_check(g, 2 * g)
        stated = annihilation_exponent_check(g, min(g, 2 * g) + 1)
        if not sharp:
            report.failures.append(f"exponent {2 * g + 1} does not annihilate")
        if below:
            report.failures.append(f"exponent {2 * g} already annihilates")
        report.details = {
            "annihilates": {str(2 * g + 1): sharp, str(2 * g): below, str(min(g, 2 * g) + 1): stated},
        }
    return report


def oracle_reports(g_max: int = 3) -> list[IdentityReport]:
    out = []
    for g in range(1, g_max + 1):
        log.info("oracle g=%d", g)
        out.append(oracle_report(g))
        out.append(nilpotency_report(g))
    return out


def sl2_round_trip_report(g_max: int = 4, seeds: int = 100) -> IdentityReport:
    report = IdentityReport("sl2-round-trip", {"gMax": g_max, "seeds": seeds})
    with timed(report):
        count = 0
        for g in range(1, g_max + 1):
            log.info("sl2 round trip g=%d", g)
            for seed in range(seeds):
                rep = round_trip(RandomModuleConfig(g, seed))
                count += 1
                report.failures += [f"g={g} seed={seed}: {f}" for f in rep.failures]
        report.details["modules"] = count
    return report


def flek_report(n_max: int = 6, g_max: int = 4) -> IdentityReport:
    report = IdentityReport("flek", {"nMax": n_max, "gMax": g_max})
    with timed(report):
        for n in range(n_max + 1):
            bad = flek_matrix_check(n)
            if bad:
                report.failures.append(f"closed form disagrees on Sym^{n} at {bad}")
        instances = [sym_power(n, max(n, 1)) for n in range(n_max + 1)]
        instances += [direct_sum([(1, [0]), (2, [0])], 2, default_ring(2))]
        instances += [round_trip_module(g, seed) for g in range(1, g_max + 1) for seed in range(5)]
        for v in instances:
            rep = verify_flek(v)
            report.failures += rep.failures
            report.failures += primitive_string_checks(v)
        report.details["instances"] = len(instances)
    return report


def round_trip_module(g: int, seed: int):
    return random_module(RandomModuleConfig(g, seed))[0]


def chow_sl2_report(g_max: int = 8, torsion_cases=((2, 7, 2), (3, 11, 2))) -> list[IdentityReport]:
    rep = IdentityReport("chow-sl2", {"gMax": g_max})
    with timed(rep):
        for g in range(1, g_max + 1):
            try:
                v, dec = build_chow_sl2(g)
            except InvariantFailure as exc:
                rep.failures.append(f"g={g}: {exc}")
                continue
            if not parity_check(dec, g):
                rep.failures.append(f"g={g}: multiplicity parity")
    return [rep] + [torsion_injectivity_demo(g, p, k) for g, p, k in torsion_cases]


def full_suite(cfg: SuiteConfig = SuiteConfig()) -> list[IdentityReport]:
    reports = [tm_table_report(), integrality_report(cfg), lemma_n_report(cfg.lemma_max)]
    reports += identity_ledger_reports(cfg.max_rank, cfg.max_deg)
    reports += key_collapse_reports()
    reports.append(pappas_report())
    reports += projector_reports(cfg.projector_g, cfg.projector_d)
    reports += fourier_model_reports(cfg.model_g)
    reports += oracle_reports(cfg.oracle_g)
    reports.append(sl2_round_trip_report(cfg.sl2_g, cfg.sl2_seeds))
    reports.append(flek_report(cfg.flek_n))
    reports += chow_sl2_report(cfg.model_g)
    return reports
