"""Exact algebraic identity suites run by ``discrete-dirac selfcheck``.

Every suite takes the blade product table as a parameter so a deliberately
corrupted table can be shown to fail.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product

import numpy as np
from sympy.polys.domains import QQ, QQ_I

from .calculus import d_c, delta_c, dirac_op, dirac_via_clifford
from .clifford import TABLE, ProductTable, clifford_mul, constant_mul, metric, unit_form
from .forms import ConstantForm, DiscreteForm, Window

MINUS_BLADES = ("e01", "e02", "e03", "e0123")
PLUS_BLADES = ("x", "e12", "e13", "e23")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


def _u(name: str) -> ConstantForm:
    return unit_form(name, exact=True)


def check_anticommutation(table: ProductTable = TABLE) -> CheckResult:
    bad = []
    for mu, nu in product(range(4), repeat=2):
        a, b = _u(f"e{mu}"), _u(f"e{nu}")
        lhs = constant_mul(a, b, table) + constant_mul(b, a, table)
        if lhs != _u("x") * (2 * metric(mu, nu)):
            bad.append((mu, nu))
    return CheckResult("prop1", not bad, f"e_mu e_nu + e_nu e_mu = 2 g_mu_nu x; failing pairs: {bad}" if bad
                       else "e_mu e_nu + e_nu e_mu = 2 g_mu_nu x for all 16 pairs")


def check_associativity(table: ProductTable = TABLE) -> CheckResult:
    idx, sign = table.index, table.sign
    bad = 0
    for i, j, k in product(range(16), repeat=3):
        ij, s1 = idx[i, j], sign[i, j]
        left = (idx[ij, k], s1 * sign[ij, k])
        jk, s2 = idx[j, k], sign[j, k]
        right = (idx[i, jk], s2 * sign[i, jk])
        bad += left != right
    return CheckResult("associativity", bad == 0, f"{4096 - bad}/4096 blade triples associate")


def check_unit(table: ProductTable = TABLE) -> CheckResult:
    x = 0
    ok = all(table.index[x, j] == j and table.sign[x, j] == 1 and table.index[j, x] == j and table.sign[j, x] == 1
             for j in range(16))
    return CheckResult("unit", ok, "x is a two-sided identity on all 16 blades" if ok else "x is not an identity")


def _projectors(table: ProductTable) -> dict[str, ConstantForm]:
    half = QQ_I(QQ(1, 2), 0)
    x, e0 = _u("x"), _u("e0")
    e12 = constant_mul(_u("e1"), _u("e2"), table)
    i = QQ_I(0, 1)
    return {
        "+0": (x + e0) * half,
        "-0": (x - e0) * half,
        "+12": (x + e12 * i) * half,
        "-12": (x - e12 * i) * half,
    }


def check_projectors(table: ProductTable = TABLE) -> CheckResult:
    mul = lambda a, b: constant_mul(a, b, table)  # noqa: E731
    P = _projectors(table)
    x, e0, zero = _u("x"), _u("e0"), ConstantForm.zero(exact=True)
    e12 = mul(_u("e1"), _u("e2"))
    i = QQ_I(0, 1)
    failures = []

    def need(label, ok):
        if not ok:
            failures.append(label)

    for k, p in P.items():
        need(f"P{k}^2 = P{k}", mul(p, p) == p)
    for s0, s12 in product("+-", repeat=2):
        a, b = P[s0 + "0"], P[s12 + "12"]
        need(f"P{s0}0 P{s12}12 = P{s12}12 P{s0}0", mul(a, b) == mul(b, a))
    for s in "+-":
        sign = 1 if s == "+" else -1
        p0, p12 = P[s + "0"], P[s + "12"]
        need(f"e0 P{s}0 = P{s}0 e0", mul(e0, p0) == mul(p0, e0))
        need(f"e1e2 P{s}12 = P{s}12 e1e2", mul(e12, p12) == mul(p12, e12))
        need(f"P{s}0 = {s}P{s}0 e0", p0 == mul(p0, e0) * sign)
        need(f"P{s}12 = {s}i P{s}12 e1e2", p12 == mul(p12, e12) * (i * sign))
    need("P+0 + P-0 = x", P["+0"] + P["-0"] == x)
    need("P+12 + P-12 = x", P["+12"] + P["-12"] == x)
    need("P+0 P-0 = 0", mul(P["+0"], P["-0"]) == zero)
    need("P+12 P-12 = 0", mul(P["+12"], P["-12"]) == zero)
    return CheckResult("projectors", not failures,
                       "failing: " + "; ".join(failures) if failures else "idempotence, commutation and absorption hold")


def check_blade_exchange(table: ProductTable = TABLE) -> CheckResult:
    mul = lambda a, b: constant_mul(a, b, table)  # noqa: E731
    e0 = _u("e0")
    failures = []
    for mu in (1, 2, 3):
        g = _u(f"e0{mu}")
        for src, dst, commutes in ((MINUS_BLADES, PLUS_BLADES, True), (PLUS_BLADES, MINUS_BLADES, False)):
            for b in src:
                prod_ = mul(g, _u(b))
                if not prod_.support() <= set(dst):
                    failures.append(f"e0{mu}*{b} support {sorted(prod_.support())}")
                sign = 1 if commutes else -1
                if mul(e0, prod_) != mul(prod_, e0) * sign:
                    failures.append(f"e0{mu}*{b} {'commutation' if commutes else 'anticommutation'} with e0")
    return CheckResult("lemma1", not failures, "; ".join(failures) if failures else
                       "e0mu maps A_minus blades to A_plus blades and back, with matching e0 (anti)commutation")


def check_lift_consistency(table: ProductTable = TABLE, window: int = 2) -> CheckResult:
    w = Window.cube(window)
    bad = 0
    for a, b in product(range(16), repeat=2):
        ca = ConstantForm(np.eye(16, dtype=np.int64)[a])
        cb = ConstantForm(np.eye(16, dtype=np.int64)[b])
        lifted = clifford_mul(ca.lift(w), cb.lift(w), table)
        bad += lifted != constant_mul(ca, cb, table).lift(w)
    return CheckResult("consistency", bad == 0, f"{256 - bad}/256 lifted products agree with constant products")


def random_integer_forms(count: int, window: int, seed: int = 0, low: int = -9, high: int = 9):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield DiscreteForm(rng.integers(low, high + 1, size=(16,) + (window,) * 4))


def check_dirac_factorisation(table: ProductTable = TABLE, window: int = 4, samples: int = 100, seed: int = 0) -> CheckResult:
    bad = sum(dirac_op(f) != dirac_via_clifford(f, table) for f in random_integer_forms(samples, window, seed))
    return CheckResult("prop2", bad == 0,
                       f"(d_c + delta_c) F == sum_mu e_mu delta_mu F on {samples - bad}/{samples} random forms, "
                       f"window {window}^4")


def check_nilpotency(table: ProductTable = TABLE, window: int = 4, samples: int = 100, seed: int = 1) -> CheckResult:
    bad = 0
    for f in random_integer_forms(samples, window, seed):
        bad += not (d_c(d_c(f)).is_zero() and delta_c(delta_c(f)).is_zero())
    return CheckResult("nilpotency", bad == 0,
                       f"d_c d_c = 0 and delta_c delta_c = 0 on {samples - bad}/{samples} random forms, window {window}^4")


SUITES = {
    "prop1": check_anticommutation,
    "associativity": check_associativity,
    "unit": check_unit,
    "projectors": check_projectors,
    "lemma1": check_blade_exchange,
    "consistency": check_lift_consistency,
    "prop2": check_dirac_factorisation,
    "nilpotency": check_nilpotency,
}
WINDOWED = ("prop2", "nilpotency")


def run_suites(only=None, table: ProductTable = TABLE, window: int = 4, samples: int = 100, seed: int = 0):
    names = list(SUITES) if not only else list(only)
    results = []
    for name in names:
        fn = SUITES[name]
        t0 = time.perf_counter()
        if name in WINDOWED:
            res = fn(table, window=window, samples=samples, seed=seed)
        else:
            res = fn(table)
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results


def faulty_table() -> ProductTable:
    """The product table with the sign of ``e1 e2`` flipped."""
    return TABLE.with_flipped_sign("e1", "e2")

