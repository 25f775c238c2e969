"""The acceptance table: each criterion recomputes a published number (or a
structural identity) from scratch and compares it with the expected value."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from . import poly
from .cohomology import (c1_basis, check_d2d1, check_d3d2, cochain_from_vector,
                         cohomology, d2, diagonal_2cocycles, as_table, group_3coboundary,
                         lift_diagonal)
from .constructions import builtin, group_algebra, superline, symmetric
from .deformation import check_deformed_ybe, residuals
from .groupoid import (check_rack_2cocycle, check_rack_3cocycle, conjugate_groupoid,
                       groupoid_cocycle_space, rack_2cocycle_from, rack_3cocycle_from)
from .hopf import HopfAlgebra, check_hopf_axioms, check_ybe, r_matrix_inverse
from .linalg import LinearMap, SubspaceBasis
from .scalars import QQ, field_from_spec

F3 = field_from_spec("Fp:3")
F5 = field_from_spec("Fp:5")


@dataclass
class Outcome:
    number: int
    title: str
    ok: bool
    expected: object
    computed: object
    seconds: float
    budget: float

    @property
    def passed(self):
        return self.ok and self.seconds <= self.budget

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        slow = "" if self.seconds <= self.budget else " OVER BUDGET"
        return (f"[{tag}] {self.number:2d} {self.title}: expected {self.expected}; "
                f"computed {self.computed} ({self.seconds:.2f}s, budget {self.budget:g}s{slow})")


# --- reference data -------------------------------------------------------------

def superline_table_cocycles(F):
    """The alpha, beta, gamma 2-cocycles of the superline, typed in from the
    published table (basis 1, g, x, gx = 0, 1, 2, 3)."""
    def phi(entries):
        return LinearMap.from_function(F, 4, 2, 1, lambda t: dict(entries.get(t, {})))
    alpha = phi({(1, 2): {(0,): 1}, (1, 3): {(0,): 1}, (2, 1): {(0,): -1}})
    beta = phi({(3, 2): {(0,): 1}, (3, 3): {(0,): -1}})
    gamma = phi({(3, 1): {(1,): 1}, (3, 2): {(2,): 1}, (3, 3): {(2,): 1}})
    return alpha, beta, gamma


def _vec(phi):
    d = phi.base_dim
    return {r * d**2 + i: v for i, col in enumerate(phi.cols) for r, v in col.items()}


def expected_superline_polys():
    x2p1 = [1, 0, 1]
    xp1 = [1, 1]
    xm1 = [-1, 1]
    m = lambda *fs: _prod(fs)
    cp = m(*([x2p1] * 2 + [xp1] * 4 + [xm1] * 8))
    mp = m(x2p1, xp1, xm1, xm1)
    return cp, mp


def _prod(fs):
    out = [1]
    for f in fs:
        out = poly.mul(QQ, out, f)
    return out


# --- criteria ---------------------------------------------------------------------

def crit1():
    r = cohomology(superline(QQ), 1)
    return r.dimH == 1, "dimH1=1", f"dimH1={r.dimH}"


def crit2():
    ok, got = True, []
    for F in (QQ, F5):
        H = superline(F)
        r = cohomology(H, 2, basis=True)
        ref = SubspaceBasis.span(F, r.dimC, [_vec(p) for p in superline_table_cocycles(F)])
        comp = SubspaceBasis.span(F, r.dimC, r.basis)
        same = ref == comp
        ok &= (r.dimZ, r.dimB, r.dimH) == (3, 0, 3) and same
        got.append(f"{F.descriptor}: Z={r.dimZ} B={r.dimB} H={r.dimH} table_span={'equal' if same else 'different'}")
    return ok, "Z=3 B=0 H=3 over Q and Fp:5, span = alpha/beta/gamma table", "; ".join(got)


def crit3():
    H = superline(QQ)
    R = H.R
    det = la.determinant(R)
    cp, mp = la.char_poly(R), la.min_poly(R)
    ecp, emp = expected_superline_polys()
    ok = det == 1 and cp == ecp and mp == emp
    return (ok, "det=1, (λ²+1)²(λ+1)⁴(λ−1)⁸, (λ²+1)(λ+1)(λ−1)²",
            f"det={det}, {poly.factored_str(QQ, cp)}, {poly.factored_str(QQ, mp)}")


def crit4():
    G = symmetric(3)
    c1 = {F.descriptor: c1_basis(group_algebra(G, F)).dim for F in (QQ, F3)}
    diag = {F.descriptor: diagonal_2cocycles(G, F).dim for F in (QQ, F3)}
    ok = all(v == 0 for v in c1.values()) and all(v == 3 for v in diag.values())
    return (ok, "dimC1=0; diagonal a-system dim 3 over Q and Fp:3",
            f"dimC1={c1}; diagonal dims={diag}")


def crit5():
    got, ok = {}, True
    for g in ("c2", "c3", "s3"):
        H = builtin(f"fun:{g}", QQ)
        h = (cohomology(H, 1).dimH, cohomology(H, 2).dimH)
        got[g] = h
        ok &= h == (0, 0)
    return ok, "H1=H2=0 for k^G, G in c2,c3,s3", str(got)


def crit6():
    Gd = conjugate_groupoid(symmetric(3))
    want = {"Q": 3, "Fp:2": 5, "Fp:3": 4, "Fp:5": 3, "Fp:7": 3}
    got = {f: groupoid_cocycle_space(Gd, 2, field_from_spec(f)).dim for f in want}
    return got == want, str(want), str(got)


COMPLEX_SUITE = [("superline", QQ), ("kg:c2", QQ), ("kg:c3", QQ), ("kg:c4", QQ),
                 ("fun:c2", QQ), ("kg:s3", F3)]


def crit7():
    bad = {}
    for name, F in COMPLEX_SUITE:
        H = builtin(name, F)
        bad[f"{name}/{F.descriptor}"] = (check_d2d1(H), check_d3d2(H))
    ok = all(v == (0, 0) for v in bad.values())
    return ok, "no failing columns for D2D1 and D3D2", f"failing columns {bad}"


YBE_SUITE = ["superline"] + [f"kg:c{n}" for n in range(1, 7)] + ["kg:s3", "kg:d3"] + \
    [f"fun:c{n}" for n in range(1, 7)] + ["fun:s3", "fun:d3"]


def crit8():
    bad = []
    for name in YBE_SUITE:
        H = builtin(name, QQ)
        R, Ri = H.R, r_matrix_inverse(H)
        one = la.identity(QQ, H.dim, 2)
        if not (check_ybe(R) and la.compose(Ri, R) == one and la.compose(R, Ri) == one):
            bad.append(name)
    return not bad, f"YBE and R⁻¹R = RR⁻¹ = id for {len(YBE_SUITE)} built-ins", f"failures {bad}"


def _random_combo(F, maps, rng):
    out = None
    for m in maps:
        c = F.norm(rng.randint(-5, 5))
        t = m.scale(c)
        out = t if out is None else out + t
    return out


def crit9(seed=2024):
    rng = random.Random(seed)
    results = {}
    H = superline(QQ)
    sl_basis = [cochain_from_vector(H, 2, v)[0] for v in cohomology(H, 2, basis=True).basis]
    G = symmetric(3)
    K = group_algebra(G, QQ)
    kg_basis = [lift_diagonal(K, G, as_table(G, v, QQ)) for v in diagonal_2cocycles(G, QQ).vectors]
    for label, A, basis in (("superline", H, sl_basis), ("kS3", K, kg_basis)):
        phis = basis + [_random_combo(QQ, basis, rng) for _ in range(20)]
        results[label] = sum(check_deformed_ybe(A, p) for p in phis), len(phis)
    # residuals agree with D2 on random non-cocycles
    Z3 = builtin("kg:c3", QQ)
    agree = 0
    for k in range(50):
        A = H if k % 2 == 0 else Z3
        d = A.dim
        while True:  # redraw until phi is not a cocycle
            phi = LinearMap.from_function(QQ, d, 2, 1, lambda t: {(rng.randrange(d),): rng.randint(-3, 3)})
            x1, x2 = d2(A, phi)
            if not (x1.is_zero() and x2.is_zero()):
                break
        r = residuals(A, phi)
        agree += (r.xi1 == x1 and r.xi2 == x2)
    ok = all(a == b for a, b in results.values()) and agree == 50
    got = ", ".join(f"{k} {a}/{b}" for k, (a, b) in results.items())
    return ok, "all deformed R satisfy YBE; residuals = D2 on 50/50", f"{got}; residuals agree {agree}/50"


def crit10(seed=7):
    rng = random.Random(seed)
    G = symmetric(3)
    n = G.order
    psi_ok = 0
    basis = diagonal_2cocycles(G, QQ).vectors
    for v in basis:
        psi = rack_2cocycle_from(G, as_table(G, v, QQ), QQ)
        psi_ok += check_rack_2cocycle(G, psi, QQ)
    theta_ok = 0
    for _ in range(20):
        a = np.array([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)],
                     dtype=object)
        c = group_3coboundary(G, a, QQ)
        theta = rack_3cocycle_from(G, c, QQ)
        theta_ok += check_rack_3cocycle(G, theta, QQ)
    ok = psi_ok == len(basis) and theta_ok == 20
    return ok, f"psi {len(basis)}/{len(basis)}, theta 20/20", f"psi {psi_ok}/{len(basis)}, theta {theta_ok}/20"


def mutate(H: HopfAlgebra, rng):
    """Copy of H with one structure constant changed by a nonzero amount."""
    F = H.field
    names = ["mu", "delta", "unit", "counit", "antipode"]
    name = rng.choice(names)
    m = getattr(H, name)
    j = rng.randrange(m.ncols)
    r = rng.randrange(m.nrows)
    delta = 0
    while not F.norm(delta):
        delta = rng.randint(-3, 3)
    cols = [dict(c) for c in m.cols]
    cols[j][r] = F.norm(cols[j].get(r, 0) + delta)
    if not cols[j][r]:
        del cols[j][r]
    new = LinearMap(F, m.base_dim, m.in_arity, m.out_arity, cols)
    parts = {k: getattr(H, k) for k in names}
    parts[name] = new
    M = HopfAlgebra(F, H.labels, parts["mu"], parts["delta"], parts["unit"], parts["counit"],
                    parts["antipode"], validate=False)
    return M, (name, r, j, delta)


def crit11(seed=11):
    rng = random.Random(seed)
    rejected, total, witnessless = 0, 0, 0
    for H in (builtin("kg:c2", QQ), superline(QQ)):
        for _ in range(20):
            M, _where = mutate(H, rng)
            rep = check_hopf_axioms(M)
            total += 1
            if not rep.ok:
                name, w = rep.first_failure()
                rejected += 1
                witnessless += w is None
    ok = rejected == total and witnessless == 0
    return ok, f"{total}/{total} mutations rejected with a witness", f"{rejected}/{total} rejected, {witnessless} without witness"


CRITERIA = {
    1: ("superline H¹", crit1, 1),
    2: ("superline H² and α/β/γ basis", crit2, 5),
    3: ("superline R_ad det/char/min poly", crit3, 1),
    4: ("kS₃ C¹ and diagonal a-system", crit4, 10),
    5: ("k^G cohomology H¹, H²", crit5, 30),
    6: ("conjugate groupoid of S₃, degree-2 cocycles", crit6, 10),
    7: ("D₂D₁ = 0 and D₃D₂ = 0 (matrix-free)", crit7, 300),
    8: ("YBE and R⁻¹ for built-ins", crit8, 60),
    9: ("deformed YBE and residuals", crit9, 120),
    10: ("quandle bridge ψ, θ", crit10, 60),
    11: ("Hopf-axiom mutation testing", crit11, 10),
}

SUITES = {
    "all": sorted(CRITERIA),
    "superline": [1, 2, 3],
    "groups": [4, 5],
    "groupoid": [6, 10],
    "complex": [7],
    "ybe": [8],
    "deformation": [9],
    "mutation": [11],
}


def run_criterion(k) -> Outcome:
    title, fn, budget = CRITERIA[k]
    t = time.perf_counter()
    ok, expected, computed = fn()
    return Outcome(k, title, bool(ok), expected, computed, time.perf_counter() - t, budget)


def run_suite(name="all", echo=None):
    if name not in SUITES:
        from .errors import ParseError
        raise ParseError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    out = []
    for k in SUITES[name]:
        o = run_criterion(k)
        if echo:
            echo(o.line())
        out.append(o)
    return out
