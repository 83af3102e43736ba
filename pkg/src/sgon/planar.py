"""Planar lattices ``Z + Z tau`` for ``tau = a + b i`` with ``a, b`` in one field Q(sqrt D).

Covers reduction to the standard fundamental domain, the exact decision of
virtual rectangularity (with isogeny degree certificate), the geodesic
criterion, CM detection and a truncated q-expansion of the j-invariant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import (
    CertificateInvalid,
    NotReduced,
    NotUpperHalfPlane,
    SchemaError,
    TooFewTermsForPrecision,
    UnsupportedFieldTower,
)
from .exact_arith import GUARD_DIGITS, QuadNum, format_rational, rational_sqrt

# Fourier coefficients c_1..c_21 of j(q) - 1/q - 744.
J_COEFFS = (
    196884,
    21493760,
    864299970,
    20245856256,
    333202640600,
    4252023300096,
    44656994071935,
    401490886656000,
    3176440229784420,
    22567393309593600,
    146211911499519294,
    874313719685775360,
    4872010111798142520,
    25497827389410525184,
    126142916465781843075,
    593121772421445058560,
    2662842413150775245160,
    11459912788444786513920,
    47438786801234168813250,
    189449976248893390028800,
    731811377318137519245696,
)
MAX_TERMS = 20
DEFAULT_J_TOLERANCE = 1e-9
CM_SAMPLE_QS = (Fraction(1), Fraction(1, 2), Fraction(2), Fraction(3), Fraction(1, 3))


def _q(x) -> QuadNum:
    return x if isinstance(x, QuadNum) else QuadNum.rational(x)


@dataclass(frozen=True)
class Tau:
    a: QuadNum
    b: QuadNum

    def __post_init__(self):
        a, b = _q(self.a), _q(self.b)
        if a.D != b.D:
            if a.is_rational() and a.D == 1:
                a = QuadNum(a.p, 0, b.D)
            elif b.is_rational() and b.D == 1:
                b = QuadNum(b.p, 0, a.D)
            else:
                raise UnsupportedFieldTower(f"a in Q(sqrt {a.D}) and b in Q(sqrt {b.D})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if b.sign() <= 0:
            raise NotUpperHalfPlane(f"imaginary part {b} is not positive")

    @classmethod
    def of(cls, a, b, D: int = 1) -> Tau:
        """Build from rationals or ``(p, q)`` pairs meaning ``p + q sqrt D``."""
        def conv(x):
            if isinstance(x, QuadNum):
                return x
            if isinstance(x, (tuple, list)):
                return QuadNum(Fraction(x[0]), Fraction(x[1]), D)
            return QuadNum(Fraction(x), Fraction(0), D)
        return cls(conv(a), conv(b))

    @classmethod
    def from_json(cls, obj: dict) -> Tau:
        try:
            D = int(obj["D"])
            return cls(QuadNum.from_strings(obj["a"], D), QuadNum.from_strings(obj["b"], D))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad tau object: {exc}") from exc

    def to_json(self) -> dict:
        return {"D": self.D, "a": self.a.to_strings(), "b": self.b.to_strings()}

    @property
    def D(self) -> int:
        return self.a.D

    def norm2(self) -> QuadNum:
        return self.a * self.a + self.b * self.b

    def to_mpc(self, precision: int = 30) -> mpmath.mpc:
        return mpmath.mpc(self.a.to_mpf(precision), self.b.to_mpf(precision))

    def __str__(self):
        return f"({self.a}) + ({self.b})i"


def mobius(M: Sequence[Sequence[int]], tau: Tau) -> Tau:
    """Exact ``(alpha tau + beta) / (gamma tau + delta)``."""
    (al, be), (ga, de) = M
    nr, ni = tau.a * al + be, tau.b * al
    dr, di = tau.a * ga + de, tau.b * ga
    den = dr * dr + di * di
    return Tau((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)


def _mul2(A, B):
    return [[A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]],
            [A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]]]


# ---------------------------------------------------------------------------
# Fundamental domain


def is_reduced(tau: Tau) -> bool:
    half = Fraction(1, 2)
    n2 = tau.norm2()
    if not (-half < tau.a <= half) or n2 < 1:
        return False
    return not (n2 == 1 and tau.a < 0)


@dataclass(frozen=True)
class ReductionResult:
    tau: Tau
    transform: tuple[tuple[int, int], tuple[int, int]]
    steps: int

    def to_json(self) -> dict:
        return {"tau_reduced": self.tau.to_json(), "tau_text": str(self.tau),
                "transform": [[str(x) for x in r] for r in self.transform], "steps": self.steps}


def reduce_to_fundamental(tau: Tau, max_steps: int = 100_000) -> ReductionResult:
    """Move ``tau`` into ``-1/2 < a <= 1/2, |tau| >= 1`` (arc with ``a < 0`` excluded)."""
    M = [[1, 0], [0, 1]]
    steps = 0
    half = Fraction(1, 2)
    while True:
        n = -((half - tau.a).floor())  # ceil(a - 1/2)
        if n:
            tau = Tau(tau.a - n, tau.b)
            M = _mul2([[1, -n], [0, 1]], M)
            steps += 1
        if tau.norm2() >= 1:
            break
        tau = mobius([[0, -1], [1, 0]], tau)
        M = _mul2([[0, -1], [1, 0]], M)
        steps += 1
        if steps > max_steps:
            raise RuntimeError("reduction did not terminate")
    if tau.norm2() == 1 and tau.a < 0:
        tau = mobius([[0, -1], [1, 0]], tau)
        M = _mul2([[0, -1], [1, 0]], M)
        steps += 1
    return ReductionResult(tau, (tuple(M[0]), tuple(M[1])), steps)


SEGMENTS = ("ImaginaryAxis", "LeftEdge", "UnitArc")


@dataclass(frozen=True)
class RegionClass:
    segments: tuple[str, ...]
    segment: str
    j_real: bool
    wr: bool
    rectangular: bool

    def to_json(self) -> dict:
        return {"segment": self.segment, "segments": list(self.segments), "j_real": self.j_real,
                "wr": self.wr, "rectangular": self.rectangular}


def region_classify(tau: Tau) -> RegionClass:
    """Exact membership in the three boundary pieces where j is real."""
    if not is_reduced(tau):
        raise NotReduced(f"{tau} is not in the fundamental domain")
    segs = []
    if tau.a == 0:
        segs.append("ImaginaryAxis")
    if tau.a == Fraction(1, 2):
        segs.append("LeftEdge")
    if tau.norm2() == 1:
        segs.append("UnitArc")
    primary = segs[0] if segs else "Interior"
    return RegionClass(tuple(segs), primary, bool(segs), "UnitArc" in segs, "ImaginaryAxis" in segs)


# ---------------------------------------------------------------------------
# Virtual rectangularity


@dataclass(frozen=True)
class VRCertificate:
    kind: str  # "RationalA" | "IrrationalA" | "NotVR"
    denominator: int | None = None
    r: Fraction | None = None
    t: QuadNum | None = None
    v: int | None = None
    w: int | None = None
    beta: Fraction | None = None
    delta: Fraction | None = None
    discriminant: Fraction | None = None
    other_t: QuadNum | None = None

    @property
    def is_vr(self) -> bool:
        return self.kind != "NotVR"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "vr": self.is_vr}
        if self.kind == "RationalA":
            out["denominator"] = str(self.denominator)
            out["delta"] = str(self.denominator)
        elif self.kind == "IrrationalA":
            out.update(r=format_rational(self.r), t=self.t.to_strings(), t_text=str(self.t),
                       v=str(self.v), w=str(self.w), a_plus_b_over_t=format_rational(self.beta),
                       delta=format_rational(self.delta), discriminant=format_rational(self.discriminant),
                       other_t=self.other_t.to_strings())
        else:
            out["discriminant"] = format_rational(self.discriminant)
            out["witness"] = "discriminant is not the square of a rational"
        return out


def vr_quadratic(tau: Tau) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients ``(A, B, C)`` of ``A u^2 + B u + C = 0`` with ``u = a0 - r``.

    Writing ``a = a0 + a1 sqrt D`` and ``b^2 = B0 + B1 sqrt D``, the number
    ``a + b^2/(a - r)`` is rational exactly when the irrational part
    ``a1 (u^2 - a1^2 D) + B1 u - B0 a1`` vanishes.
    """
    a0, a1, D = tau.a.p, tau.a.q, tau.D
    b2 = tau.b * tau.b
    return a1, b2.q, -a1 * (a1 * a1 * D + b2.p)


def _certificate_from_root(tau: Tau, u: Fraction) -> tuple[Fraction, QuadNum, Fraction]:
    r = tau.a.p - u
    t = (tau.a - r) / tau.b
    beta = tau.a + tau.b / t
    if not beta.is_rational():
        raise CertificateInvalid(f"a + b/t = {beta} is irrational")
    return r, t, beta.p


def vr_decide(tau: Tau) -> VRCertificate:
    if tau.a.is_rational():
        return VRCertificate("RationalA", denominator=tau.a.p.denominator)
    A, B, C = vr_quadratic(tau)
    disc = B * B - 4 * A * C
    s = rational_sqrt(disc)
    if s is None:
        return VRCertificate("NotVR", discriminant=disc)
    roots = [(-B + s) / (2 * A), (-B - s) / (2 * A)]
    cands = sorted((tau.a.p - u, u) for u in roots)
    cands.sort(key=lambda ru: (abs(ru[0]), ru[0]))
    (r, u), (_, u2) = cands
    r, t, beta = _certificate_from_root(tau, u)
    _, t2, _ = _certificate_from_root(tau, u2)
    v, w = r.denominator, beta.denominator
    delta = abs(beta - r) * v * w
    return VRCertificate("IrrationalA", r=r, t=t, v=v, w=w, beta=beta, delta=delta,
                         discriminant=disc, other_t=t2)


def check_certificate(tau: Tau, cert: VRCertificate) -> None:
    """Raise CertificateInvalid unless the exact identities of ``cert`` hold."""
    if cert.kind == "RationalA":
        if not (tau.a.is_rational() and tau.a.p.denominator == cert.denominator):
            raise CertificateInvalid("a is not rational with the stated denominator")
        return
    if cert.kind != "IrrationalA":
        raise CertificateInvalid("not a virtually rectangular certificate")
    t = cert.t
    if t.is_zero():
        raise CertificateInvalid("t = 0")
    if tau.a - tau.b * t != cert.r:
        raise CertificateInvalid("a - b t differs from r")
    if tau.a + tau.b / t != cert.beta:
        raise CertificateInvalid("a + b/t differs from the stated rational")
    if cert.r.denominator != cert.v or cert.beta.denominator != cert.w:
        raise CertificateInvalid("v, w are not the denominators")


@dataclass(frozen=True)
class IsogenyDegree:
    delta: Fraction
    constructive_index: Fraction
    match: bool

    def to_json(self) -> dict:
        return {"delta": format_rational(self.delta),
                "constructive_index": format_rational(self.constructive_index), "match": self.match}


def isogeny_degree(tau: Tau, cert: VRCertificate | None = None) -> IsogenyDegree:
    """Degree ``|b| v w (t^2 + 1)/|t|`` and the index of an explicit rectangular sublattice.

    The constructive side rotates the lattice to ``[[1, r], [t, t beta]]``
    (common scalar dropped), takes the axis-parallel vectors
    ``u' e1 - v e2`` and ``q' e1 - w e2`` with ``r = u'/v, beta = q'/w``
    and divides the determinants.
    """
    cert = cert or vr_decide(tau)
    check_certificate(tau, cert)
    if cert.kind == "RationalA":
        q = cert.denominator
        p = tau.a.p * q
        # (0, q b) = q (a, b) - p (1, 0); sublattice spanned with (1, 0)
        z = (tau.a * q - p, tau.b * q)
        if not z[0].is_zero():
            raise CertificateInvalid("q tau - p is not vertical")
        index = (z[1] / tau.b)
        return IsogenyDegree(Fraction(q), index.p, index == q)
    t, r, beta, v, w = cert.t, cert.r, cert.beta, cert.v, cert.w
    delta_q = abs(tau.b) * v * w * (t * t + 1) / abs(t)
    if not delta_q.is_rational():
        raise CertificateInvalid(f"degree formula gave irrational {delta_q}")
    col1 = (QuadNum.rational(1, tau.D), t)
    col2 = (QuadNum.rational(r, tau.D), t * beta)
    u1, q1 = int(r * v), int(beta * w)
    z1 = (col1[0] * u1 - col2[0] * v, col1[1] * u1 - col2[1] * v)
    z2 = (col1[0] * q1 - col2[0] * w, col1[1] * q1 - col2[1] * w)
    if not (z1[0].is_zero() and z2[1].is_zero()):
        raise CertificateInvalid("sublattice vectors are not axis-parallel")
    det_R = abs(z1[1] * z2[0])
    det_L = abs(col1[0] * col2[1] - col2[0] * col1[1])
    index = det_R / det_L
    if not index.is_rational():
        raise CertificateInvalid(f"constructive index {index} is irrational")
    return IsogenyDegree(delta_q.p, index.p, delta_q.p == index.p)


# ---------------------------------------------------------------------------
# Geodesics


@dataclass(frozen=True)
class GeodesicClass:
    shape: str  # "Vertical" | "Semicircle"
    closed_at_infinity: bool
    x: QuadNum | None = None
    p: Fraction | None = None
    q: Fraction | None = None
    endpoints: tuple[Fraction, Fraction] | None = None

    def to_json(self) -> dict:
        out: dict = {"shape": self.shape, "closed_at_infinity": self.closed_at_infinity}
        if self.shape == "Vertical":
            out["x"] = self.x.to_strings()
        else:
            out["p"] = format_rational(self.p)
            out["q"] = format_rational(self.q)
        out["endpoints"] = None if self.endpoints is None else [format_rational(e) for e in self.endpoints]
        return out


def geodesic_classify(tau: Tau) -> GeodesicClass:
    """The only geodesic through ``tau`` that can be closed at infinity.

    For irrational ``a`` it is the semicircle ``X^2 - pX + q`` with rational
    ``p, q`` through ``tau``: with ``a^2 + b^2 = S0 + S1 sqrt D`` the
    irrational part forces ``p = S1/a1`` and then ``q = a0 p - S0``.
    """
    if tau.a.is_rational():
        return GeodesicClass("Vertical", True, x=tau.a, endpoints=None)
    S = tau.norm2()
    p = S.q / tau.a.q
    q = tau.a.p * p - S.p
    disc = p * p - 4 * q
    s = rational_sqrt(disc)
    if s is None:
        return GeodesicClass("Semicircle", False, p=p, q=q)
    return GeodesicClass("Semicircle", True, p=p, q=q, endpoints=((p - s) / 2, (p + s) / 2))


# ---------------------------------------------------------------------------
# CM


@dataclass(frozen=True)
class CMReport:
    is_cm: bool
    samples: tuple[tuple[Fraction, QuadNum, bool], ...]  # (q, t = q b, condition holds)
    t_pair: tuple[QuadNum, QuadNum] | None
    reciprocal_ok: bool | None

    def to_json(self) -> dict:
        return {
            "is_cm": self.is_cm,
            "t_family_samples": [{"q": format_rational(q), "t": t.to_strings(), "t_text": str(t),
                                  "verified": ok} for q, t, ok in self.samples],
            "t_pair": None if self.t_pair is None else [t.to_strings() for t in self.t_pair],
            "t_times_t_prime_is_minus_one": self.reciprocal_ok,
        }


def satisfies_condition(tau: Tau, t: QuadNum) -> bool:
    """Exact test of ``a - b t`` and ``a + b / t`` both rational."""
    if t.is_zero():
        return False
    return (tau.a - tau.b * t).is_rational() and (tau.a + tau.b / t).is_rational()


def cm_analyze(tau: Tau, qs: Sequence[Fraction] = CM_SAMPLE_QS) -> CMReport:
    b2 = tau.b * tau.b
    is_cm = tau.a.is_rational() and b2.is_rational()
    if is_cm:
        samples = tuple((Fraction(q), tau.b * Fraction(q), satisfies_condition(tau, tau.b * Fraction(q)))
                        for q in qs)
        return CMReport(True, samples, None, None)
    cert = vr_decide(tau)
    if cert.kind == "IrrationalA":
        t, t2 = cert.t, cert.other_t
        return CMReport(False, (), (t, t2), t * t2 == -1)
    return CMReport(False, (), None, None)


# ---------------------------------------------------------------------------
# j-invariant


@dataclass(frozen=True)
class JValue:
    value: mpmath.mpc
    error_bound: mpmath.mpf
    terms: int
    precision: int
    reduced: Tau

    def to_json(self, digits: int | None = None) -> dict:
        d = digits or self.precision
        return {"re": mpmath.nstr(self.value.real, d), "im": mpmath.nstr(self.value.imag, d),
                "error_bound": mpmath.nstr(self.error_bound, 5), "terms": self.terms,
                "tau_reduced": self.reduced.to_json()}


def j_invariant(tau: Tau, terms: int = MAX_TERMS, precision: int = 30,
                tolerance: float = DEFAULT_J_TOLERANCE) -> JValue:
    """``1/Q + 744 + sum_{k <= terms} c_k Q^k`` at ``Q = exp(2 pi i tau)``, tau reduced first.

    The tail estimate ``2 |c_{terms+1} Q^{terms+1}|`` must not exceed ``tolerance``.
    """
    if not 1 <= terms <= MAX_TERMS:
        raise TooFewTermsForPrecision(f"terms must lie in [1, {MAX_TERMS}], got {terms}")
    red = tau if is_reduced(tau) else reduce_to_fundamental(tau).tau
    with mpmath.workdps(precision + GUARD_DIGITS):
        Q = mpmath.exp(2j * mpmath.pi * red.to_mpc(precision + GUARD_DIGITS))
        err = 2 * J_COEFFS[terms] * abs(Q) ** (terms + 1)
        if err > tolerance:
            raise TooFewTermsForPrecision(
                f"{terms} terms leave a tail of about {mpmath.nstr(err, 3)} > {tolerance}")
        total = 1 / Q + 744
        Qk = mpmath.mpc(1)
        for c in J_COEFFS[:terms]:
            Qk *= Q
            total += c * Qk
        return JValue(+total, +err, terms, precision, red)


def j_coefficients_from_eisenstein(count: int) -> list[int]:
    """c_1..c_count of j from ``E4^3 / Delta``, by integer power-series arithmetic."""
    N = count + 2

    def sigma(n, k):
        return sum(d ** k for d in range(1, n + 1) if n % d == 0)

    def mul(x, y):
        out = [0] * N
        for i, xi in enumerate(x):
            if xi:
                for j in range(N - i):
                    out[i + j] += xi * y[j]
        return out

    E4 = [1] + [240 * sigma(n, 3) for n in range(1, N)]
    # Delta / q = prod (1 - q^n)^24
    eta = [1] + [0] * (N - 1)
    for n in range(1, N):
        for _ in range(24):
            eta = [eta[i] - (eta[i - n] if i >= n else 0) for i in range(N)]
    E43 = mul(mul(E4, E4), E4)
    # j * q = E4^3 / (Delta/q); eta[0] = 1 so division is exact
    inv = [0] * N
    inv[0] = 1
    for i in range(1, N):
        inv[i] = -sum(eta[k] * inv[i - k] for k in range(1, i + 1))
    jq = mul(E43, inv)
    # jq = 1 + 744 q + c1 q^2 + ...
    return jq[2:2 + count]
