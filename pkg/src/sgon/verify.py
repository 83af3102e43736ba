"""Randomized cross-consistency batteries.

Each battery is deterministic for a given seed and returns a
``BatteryResult`` listing every violation it found.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import intlinalg as il
from . import planar as pl
from . import sparse_core as sc
from .errors import SingularBasis
from .exact_arith import QuadNum, SymbolBasis

QUAD_DS = (2, 3, 5, 7)


@dataclass
class BatteryResult:
    name: str
    trials: int
    failures: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "ok": self.ok,
                "failures": self.failures[:20], "failure_count": len(self.failures),
                "stats": {k: str(v) for k, v in sorted(self.stats.items())}}


def _rat(rng: random.Random, num: int = 40, den: int = 20) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _nonzero_rat(rng: random.Random, num: int = 40, den: int = 20) -> Fraction:
    while True:
        x = _rat(rng, num, den)
        if x:
            return x


# ---------------------------------------------------------------------------
# Random planar points


def random_generic_tau(rng: random.Random, D: int) -> pl.Tau:
    a = QuadNum(_rat(rng), _nonzero_rat(rng), D)
    while True:
        b = QuadNum(_rat(rng), _rat(rng), D)
        if b.sign() != 0:
            return pl.Tau(a, -b if b.sign() < 0 else b)


def random_vr_tau(rng: random.Random, D: int, irrational_t: bool = True) -> pl.Tau:
    """A point with ``a - b t = r`` and ``a + b/t = beta`` for random rational r, beta."""
    while True:
        t = QuadNum(_rat(rng, 10, 6), _nonzero_rat(rng, 10, 6) if irrational_t else 0, D)
        r, beta = _rat(rng, 10, 6), _rat(rng, 10, 6)
        if t.is_zero() or r == beta:
            continue
        b = (t * (beta - r)) / (t * t + 1)
        if b.sign() == 0:
            continue
        if b.sign() < 0:
            t, b = -t, -b  # same a, same r and beta
        a = b * t + r
        return pl.Tau(a, b)


def random_cm_tau(rng: random.Random, D: int) -> pl.Tau:
    a = _rat(rng, 10, 12)
    c = Fraction(rng.randint(1, 20), rng.randint(1, 12))
    b = QuadNum(0, c, D) if rng.random() < 0.8 else QuadNum(c, 0, D)
    return pl.Tau(QuadNum(a, 0, D), b)


def elliptic_vs_geodesic(samples: int = 500, seed: int = 0) -> BatteryResult:
    """VR decision agrees with the closed-at-infinity geodesic criterion; certificates are sound."""
    rng = random.Random(seed)
    res = BatteryResult("elliptic_vs_geodesic", samples)
    vr_count = 0
    for i in range(samples):
        D = QUAD_DS[i % len(QUAD_DS)]
        kind = i % 3
        tau = (random_generic_tau(rng, D) if kind == 0 else
               random_vr_tau(rng, D) if kind == 1 else random_cm_tau(rng, D))
        cert = pl.vr_decide(tau)
        geo = pl.geodesic_classify(tau)
        if cert.is_vr != geo.closed_at_infinity:
            res.failures.append(f"disagreement at tau = {tau}: vr={cert.is_vr}, closed={geo.closed_at_infinity}")
            continue
        if geo.shape == "Semicircle":
            S = tau.norm2()
            if S - tau.a * geo.p + geo.q != 0:
                res.failures.append(f"semicircle does not pass through {tau}")
        if cert.is_vr:
            vr_count += 1
            try:
                deg = pl.isogeny_degree(tau, cert)
            except Exception as exc:  # certificate failures are violations here
                res.failures.append(f"certificate for {tau} rejected: {exc}")
                continue
            if not deg.match or deg.delta <= 0 or deg.delta.denominator != 1:
                res.failures.append(f"degree mismatch at {tau}: {deg}")
    res.stats["vr"] = vr_count
    return res


def cm_battery(samples: int = 50, seed: int = 0) -> BatteryResult:
    """CM points admit at least 5 verified t = q b; non-CM VR points have t t' = -1."""
    rng = random.Random(seed)
    res = BatteryResult("cm_behaviour", 2 * samples)
    for i in range(samples):
        tau = random_cm_tau(rng, QUAD_DS[i % len(QUAD_DS)])
        rep = pl.cm_analyze(tau)
        good = {t for _, t, ok in rep.samples if ok}
        if not rep.is_cm or len(good) < 5:
            res.failures.append(f"CM point {tau}: only {len(good)} verified t values")
    done = 0
    while done < samples:
        tau = random_vr_tau(rng, QUAD_DS[done % len(QUAD_DS)])
        rep = pl.cm_analyze(tau)
        if rep.is_cm or not tau.a.q:
            continue  # want irrational a, hence non-CM
        done += 1
        if rep.t_pair is None or not rep.reciprocal_ok:
            res.failures.append(f"non-CM point {tau}: t t' != -1")
    return res


# ---------------------------------------------------------------------------
# j-invariant


def _segment_samples(rng: random.Random, count: int):
    edge, arc, axis = [], [], []
    while len(edge) < count:
        b = Fraction(rng.randint(87, 300), 100)
        edge.append(pl.Tau.of(Fraction(1, 2), b))
    while len(arc) < count:
        s = Fraction(rng.randint(578, 1000), 1000)  # s in [1/sqrt3, 1] keeps 0 <= a <= 1/2
        a, b = (1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)
        if a <= Fraction(1, 2):
            arc.append(pl.Tau.of(a, b))
    while len(axis) < count:
        axis.append(pl.Tau.of(0, Fraction(rng.randint(100, 300), 100)))
    return edge, arc, axis


def interior_samples(rng: random.Random, count: int) -> list[pl.Tau]:
    out = []
    while len(out) < count:
        a = Fraction(rng.randint(5, 45), 100) * rng.choice((-1, 1))
        b = Fraction(rng.randint(110, 250), 100)
        out.append(pl.Tau.of(a, b))
    return out


J_SEGMENT_RANGES = {
    "LeftEdge": (None, 0),
    "UnitArc": (0, 1),
    "ImaginaryAxis": (1, None),
}


def j_battery(samples: int = 50, seed: int = 0, precision: int = 30, terms: int = pl.MAX_TERMS) -> BatteryResult:
    """Real j with the expected range (j/1728) on the boundary pieces; non-real j inside."""
    rng = random.Random(seed)
    res = BatteryResult("j_regions", 4 * samples)
    edge, arc, axis = _segment_samples(rng, samples)
    slack = mpmath.mpf("1e-12")
    worst_im = mpmath.mpf(0)
    for name, pts in (("LeftEdge", edge), ("UnitArc", arc), ("ImaginaryAxis", axis)):
        lo, hi = J_SEGMENT_RANGES[name]
        for tau in pts:
            region = pl.region_classify(tau)
            if name not in region.segments:
                res.failures.append(f"{tau} not classified on {name}")
            j = pl.j_invariant(tau, terms, precision).value
            J = j.real / 1728
            worst_im = max(worst_im, abs(j.imag))
            if abs(j.imag) >= mpmath.mpf("1e-8"):
                res.failures.append(f"{name} {tau}: Im j = {mpmath.nstr(j.imag, 5)}")
            if (lo is not None and J < lo - slack) or (hi is not None and J > hi + slack):
                res.failures.append(f"{name} {tau}: j/1728 = {mpmath.nstr(J, 10)} outside range")
            if name == "UnitArc" and region.wr != (-slack <= J <= 1 + slack):
                res.failures.append(f"{tau}: WR flag disagrees with j range")
    least_im = mpmath.inf
    for tau in interior_samples(rng, samples):
        if pl.region_classify(tau).j_real:
            res.failures.append(f"{tau} misclassified as boundary")
        j = pl.j_invariant(tau, terms, precision).value
        least_im = min(least_im, abs(j.imag))
        if abs(j.imag) <= mpmath.mpf("1e-4"):
            res.failures.append(f"interior {tau}: |Im j| = {mpmath.nstr(abs(j.imag), 5)}")
    res.stats["max_boundary_im"] = mpmath.nstr(worst_im, 5)
    res.stats["min_interior_im"] = mpmath.nstr(least_im, 5)
    return res


# ---------------------------------------------------------------------------
# Integer kernels


def random_full_rank(rng: random.Random, m: int, n: int, H: int) -> list[list[int]]:
    while True:
        B = [[rng.randint(-H, H) for _ in range(n)] for _ in range(m)]
        if il.rank(B) == m:
            return B


def siegel_property(trials: int = 1000, seed: int = 0, H: int = 10) -> BatteryResult:
    """Reduced kernel bases of random full-rank m x n matrices meet ``(sqrt(n) |B|)^m``."""
    rng = random.Random(seed)
    res = BatteryResult("siegel_property", trials)
    lll_ok = fallback = 0
    for _ in range(trials):
        n = rng.randint(2, 6)
        m = rng.randint(1, n - 1)
        B = random_full_rank(rng, m, n, H)
        target = il.siegel_bound(B)
        K = il.reduce_kernel_basis(il.integer_kernel(B), target)
        if K.method != "exhaustive-sublattice" and not il.same_lattice(K.vectors, il.integer_kernel(B).vectors):
            res.failures.append(f"reduction changed the kernel lattice of {B}")
        if K.within_bound:
            if K.method.startswith("exhaustive"):
                fallback += 1
            else:
                lll_ok += 1
        else:
            res.failures.append(f"unresolved: {B} product {K.sup_norm_product()} > {target:.4f}")
    res.stats["lll"] = lll_ok
    res.stats["exhaustive_fallback"] = fallback
    return res


# ---------------------------------------------------------------------------
# Rational dimension / nu / sparsity levels

_SYMS = ("sqrt2", "sqrt3", "sqrt5", "pi", "e")


def random_lattice(rng: random.Random, n: int, basis: SymbolBasis | None = None) -> sc.LatticeBasis:
    """Random nonsingular lattice mixing rational rows, real multiples of integer rows and generic rows."""
    basis = basis or SymbolBasis.from_names(("1",) + _SYMS)
    m = basis.size
    while True:
        rows = []
        style = rng.random()
        for _ in range(n):
            kind = rng.random()
            if kind < style:
                # alpha * f with alpha a random symbolic real
                alpha = [Fraction(0)] * m
                for s in rng.sample(range(m), rng.randint(1, 2)):
                    alpha[s] = _nonzero_rat(rng, 5, 3)
                f = [rng.randint(-4, 4) for _ in range(n)]
                rows.append([[c * x for c in alpha] for x in f])
            else:
                row = []
                for _ in range(n):
                    e = [Fraction(0)] * m
                    e[rng.randrange(m)] = Fraction(rng.randint(-4, 4))
                    if rng.random() < 0.3:
                        e[rng.randrange(m)] += rng.randint(-2, 2)
                    row.append(e)
                rows.append(row)
        try:
            return sc.LatticeBasis.from_coeffs(basis, rows)
        except SingularBasis:
            continue


def virt_rect_equivalence(trials: int = 200, seed: int = 0, max_n: int = 6) -> BatteryResult:
    """``d(L) = n``, ``nu(L) != 0`` and ``s_1 = ... = s_n = 1`` agree."""
    rng = random.Random(seed)
    res = BatteryResult("virt_rect_equivalence", trials)
    aligned = 0
    for _ in range(trials):
        n = rng.randint(2, max_n)
        A = random_lattice(rng, n)
        _, d = sc.rational_dimension(A)
        p1 = d == n
        p2 = not sc.nu(A).is_zero
        p3 = all(s == 1 for s in sc.sparsity_levels(A).levels)
        aligned += p1
        if not (p1 == p2 == p3):
            res.failures.append(f"d=n:{p1} nu!=0:{p2} s=1:{p3} for {A!r}")
    res.stats["aligned"] = aligned
    return res


def run_all(seed: int = 0, quick: bool = False) -> list[BatteryResult]:
    scale = 5 if quick else 1
    return [
        elliptic_vs_geodesic(500 // scale, seed),
        siegel_property(1000 // scale, seed),
        virt_rect_equivalence(200 // scale, seed),
        cm_battery(50 // scale, seed),
        j_battery(50 // scale, seed),
    ]
