"""Acceptance criteria, one check per criterion.

Run with ``pytest tests/test_acceptance.py`` (one PASS/FAIL line per
criterion is printed) or directly with ``python tests/test_acceptance.py``.
"""

import csv
import io
import math
import os
import sys
import tempfile
from contextlib import redirect_stdout
from unittest import mock

import numpy as np
import pytest

from bernlike import basis_core
from bernlike.basis_core import (
    basis_coeff_matrix,
    basis_grid,
    eval_alpha_closed,
    expand_via_lower_order,
)
from bernlike.bernstein import classical_basis_matrix
from bernlike.cli import main as cli_main
from bernlike.families import alpha_family, classical_family, sq_family, validate_family
from bernlike.operators import (
    gruss_voronovskaja_estimate,
    moment_direct,
    moment_recurrence,
    voronovskaja_estimate,
)
from bernlike.shape_analysis import (
    DataClass,
    DataVector,
    check_convex_image,
    check_monotone_image,
    random_convex_data,
    random_increasing_data,
    second_derivative_form_n2,
)

ALPHA_QUARTERS = [0.0, 0.25, 0.5, 0.75, 1.0]
ALPHA_TENTHS = [round(0.1 * k, 10) for k in range(11)]
LIMIT_ALPHAS = [0.0, 0.5, 1.0]
LIMIT_ZS = [0.25, 0.5, 0.75]
SEED = 20240601


def ac1_equivalence():
    z = np.linspace(0, 1, 101)
    worst = 0.0
    for alpha in ALPHA_QUARTERS:
        for n in range(1, 16):
            rec = basis_grid(alpha_family(alpha), n, z)
            for j, t in enumerate(z):
                for k in range(n + 1):
                    worst = max(worst, abs(rec[j, k] - eval_alpha_closed(n, k, alpha, t)))
    return worst <= 1e-10, f"max |recursion - closed form| = {worst:.2e} (tol 1e-10)"


def ac2_classical_collapse():
    z = np.linspace(0, 1, 101)
    worst = 0.0
    for n in range(1, 21):
        rec = basis_grid(alpha_family(1.0), n, z)
        for k in range(n + 1):
            ref = np.array([math.comb(n, k) * t**k * (1 - t) ** (n - k) for t in z])
            worst = max(worst, float(np.max(np.abs(rec[:, k] - ref))))
    ex1 = basis_grid(classical_family(), 2, z)
    ref2 = np.stack([(1 - z) ** 2, 2 * z * (1 - z), z**2], axis=-1)
    worst_ex1 = float(np.max(np.abs(ex1 - ref2)))
    ok = worst <= 1e-12 and worst_ex1 <= 1e-14
    return ok, f"alpha=1 max err {worst:.2e} (tol 1e-12); (-1,0,z^2-z+1) degree 2 err {worst_ex1:.2e} (tol 1e-14)"


def ac3_basis_properties():
    z = np.linspace(0, 1, 1001)
    pou = sym = end = 0.0
    neg = math.inf
    for alpha in ALPHA_TENTHS:
        spec = alpha_family(alpha)
        for n in range(1, 31):
            f = basis_grid(spec, n, z)
            pou = max(pou, float(np.max(np.abs(f.sum(-1) - 1))))
            sym = max(sym, float(np.max(np.abs(f - basis_grid(spec, n, 1 - z)[:, ::-1]))))
            neg = min(neg, float(f.min()))
            delta = np.zeros(n + 1)
            delta[0] = 1
            end = max(end, float(np.max(np.abs(f[0] - delta))), float(np.max(np.abs(f[-1] - delta[::-1]))))
            if n >= 2:
                c = basis_coeff_matrix(spec, n)
                # exact in the polynomial backend
                if not (np.array_equal(c[:, 0], delta) and np.array_equal(c[:, -1], delta[::-1])):
                    end = math.inf
    ok = pou <= 1e-12 and sym <= 1e-12 and neg >= -1e-12 and end <= 1e-14
    return ok, (f"partition {pou:.2e} (1e-12), symmetry {sym:.2e} (1e-12), "
                f"min value {neg:.2e} (>= -1e-12), endpoints {end:.2e} (1e-14)")


def ac4_lower_order_expansion():
    worst = 0.0
    max_terms = 0
    zs = np.linspace(0, 1, 21)
    specs = [alpha_family(a) for a in (0.0, 0.5, 1.0)]
    with mock.patch.object(basis_core, "eval_classical_bernstein",
                           wraps=basis_core.eval_classical_bernstein) as counter:
        for spec in specs:
            for t in zs:
                for n in range(3, 13):
                    direct = basis_grid(spec, n, np.array([t]))[0]
                    for m in range(2, n):
                        for i in range(n + 1):
                            counter.reset_mock()
                            v = expand_via_lower_order(spec, n, m, i, t)
                            if m == 2:
                                max_terms = max(max_terms, counter.call_count)
                            worst = max(worst, abs(v - direct[i]))
    ok = worst <= 1e-10 and max_terms <= 3
    return ok, f"max |expansion - recursion| = {worst:.2e} (1e-10); m=2 terms touched <= {max_terms} (3)"


def ac5_moment_recurrence():
    worst = 0.0
    first = 0.0
    for alpha in LIMIT_ALPHAS:
        for t in np.linspace(0, 1, 21):
            for n in range(2, 13):
                for p in range(0, 7):
                    rec = moment_recurrence(n, p, alpha, t).value
                    worst = max(worst, abs(rec - moment_direct(n, p, alpha, t).value))
                    if p == 1:
                        first = max(first, abs(rec - t))
    ok = worst <= 1e-10 and first <= 1e-12
    return ok, f"max |recurrence - direct| = {worst:.2e} (1e-10); first moment vs z {first:.2e} (1e-12)"


def ac6_voronovskaja():
    lines = []
    ok = True
    for alpha in LIMIT_ALPHAS:
        for z in LIMIT_ZS:
            e64, e512 = voronovskaja_estimate(math.exp, math.exp, alpha, z, (64, 512)).abs_errors
            good = e512 < e64 and e512 <= 0.02
            ok &= good
            if not good:
                lines.append(f"alpha={alpha} z={z}: {e64:.2e} -> {e512:.2e}")
    worst = max(
        voronovskaja_estimate(math.exp, math.exp, a, z, (512,)).abs_errors[0] for a in LIMIT_ALPHAS for z in LIMIT_ZS
    )
    return ok, f"exp: error shrinks 64->512 everywhere, worst at 512 {worst:.2e} (0.02)" + "; ".join(lines)


def ac7_gruss_voronovskaja():
    ok = True
    worst = 0.0
    for alpha in LIMIT_ALPHAS:
        for z in LIMIT_ZS:
            err = gruss_voronovskaja_estimate(math.sin, math.cos, math.exp, math.exp, alpha, z,
                                              (64, 128, 256, 512)).abs_errors
            ok &= all(b < a for a, b in zip(err, err[1:])) and err[-1] <= 0.02
            worst = max(worst, err[-1])
    ident, one = (lambda t: t), (lambda t: 1.0)
    id_err = 0.0
    for z in LIMIT_ZS:
        est = gruss_voronovskaja_estimate(ident, one, ident, one, 1.0, z, (2, 3, 8, 64, 128, 256, 512))
        id_err = max(id_err, max(abs(e - z * (1 - z)) for e in est.estimates))
    ok &= id_err <= 1e-10
    return ok, f"(sin, exp) decreasing, worst at 512 {worst:.2e} (0.02); identity vs z(1-z) {id_err:.2e} (1e-10)"


def ac8_shape_preservation():
    rng = np.random.default_rng(SEED)
    failures = 0
    worst_mono = worst_conv = math.inf
    for alpha in LIMIT_ALPHAS:
        spec = alpha_family(alpha)
        for n in range(1, 16):
            for _ in range(100):
                r = check_monotone_image(spec, random_increasing_data(rng, n), tol=1e-9)
                failures += not r.passed
                worst_mono = min(worst_mono, r.extremal_value)
                r = check_convex_image(spec, random_convex_data(rng, n), tol=1e-8)
                failures += not r.passed
                worst_conv = min(worst_conv, r.extremal_value)
    ident = 0.0
    for alpha in ALPHA_TENTHS:
        for _ in range(20):
            lam = random_convex_data(rng, 2).values
            r = check_convex_image(alpha_family(alpha), DataVector(lam, DataClass.CONVEX), grid=101, tol=1e-8)
            ident = max(ident, abs(r.extremal_value - second_derivative_form_n2(alpha, lam)))
    ok = failures == 0 and ident <= 1e-10
    return ok, (f"{failures} failures in 9000 random trials (seed {SEED}); "
                f"n=2 identity err {ident:.2e} (1e-10)")


def ac9_figure_sweep():
    lo, hi, bad_sum = math.inf, -math.inf, 0.0
    with tempfile.TemporaryDirectory() as tmp:
        for n in (2, 3, 4):
            path = os.path.join(tmp, f"fig_n{n}.csv")
            with redirect_stdout(io.StringIO()):
                code = cli_main(["basis", "--family", "alpha", "--alpha-sweep", "0:1:0.2",
                                 "--degree", str(n), "--out", path])
            if code != 0:
                return False, f"basis exited {code} for n={n}"
            with open(path) as fh:
                rows = list(csv.reader(fh))
            alphas = sorted({float(r[0]) for r in rows[1:]})
            if alphas != [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]:
                return False, f"unexpected sweep {alphas}"
            vals = np.array([[float(v) for v in r[2:]] for r in rows[1:]])
            lo, hi = min(lo, vals.min()), max(hi, vals.max())
            bad_sum = max(bad_sum, float(np.max(np.abs(vals.sum(1) - 1))))
    ok = lo >= -1e-12 and hi <= 1 + 1e-12 and bad_sum <= 1e-12
    return ok, f"curves in [{lo:.2e}, {hi:.6f}]; row sum err {bad_sum:.2e} (1e-12)"


def ac10_sq_family():
    z = np.linspace(0, 1, 1001)
    ok = True
    pou = sym = 0.0
    for nu in (0.0, 0.5, 1.0):
        spec = sq_family(nu)
        ok &= validate_family(spec, 1001).passed
        for n in range(1, 11):
            f = basis_grid(spec, n, z)
            pou = max(pou, float(np.max(np.abs(f.sum(-1) - 1))))
            sym = max(sym, float(np.max(np.abs(f - basis_grid(spec, n, 1 - z)[:, ::-1]))))
    ok &= pou <= 1e-12 and sym <= 1e-12
    return ok, f"validation passed for nu in {{0, 0.5, 1}}; partition {pou:.2e}, symmetry {sym:.2e} (1e-12)"


CRITERIA = [
    ("AC1 recursion equals closed form", ac1_equivalence),
    ("AC2 classical collapse", ac2_classical_collapse),
    ("AC3 basis properties", ac3_basis_properties),
    ("AC4 lower-order expansion", ac4_lower_order_expansion),
    ("AC5 moment recurrence", ac5_moment_recurrence),
    ("AC6 Voronovskaja limit", ac6_voronovskaja),
    ("AC7 Gruss-Voronovskaja limit", ac7_gruss_voronovskaja),
    ("AC8 shape preservation", ac8_shape_preservation),
    ("AC9 alpha sweep figure data", ac9_figure_sweep),
    ("AC10 sq-basis family", ac10_sq_family),
]


def _line(name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for name, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(_line(name, ok, detail))
    sys.exit(0 if all(results) else 1)
