"""Coset theta functions and their reduction to ray class theta series.

A product of two generalized theta functions is a theta function of a coset
of a rank-2 lattice sitting inside an imaginary quadratic field.  When that
lattice is an ideal, the coset theta function equals w_F times a ray class
theta series at conductor J/hcf(alpha, J).  On top of these two reductions
sit the cross-field relation check (equality of skew-set theta differences
over an admissible conductor pair) and the conductor descent check (trading
a prime off the conductor against doubled class sets).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

from .qseries import QSeries
from .quadfield import (
    Field,
    QIdeal,
    QuadInt,
    factor_ideal,
    field,
    hnf2,
    principal_ideal,
    squarefree_decompose,
)
from .rayclass import (
    CharacterPsi,
    ClassCombo,
    Conductor,
    RayClassRef,
    admissible,
    compute_skew_sets,
    lift_classes,
    ray_theta,
    units_mod_conductor,
)
from .report import VerificationReport, compare_series_report

Coords = tuple[Fraction, Fraction]


# -- exact quadratic inequalities ------------------------------------------------


def quad_le_range(A: int, B: int, C: int) -> Optional[tuple[int, int]]:
    """Integer solutions of A i^2 + B i + C <= 0 with A > 0, as [lo, hi]."""
    disc = B * B - 4 * A * C
    if disc < 0:
        return None
    r = isqrt(disc)
    lo = (-B - r) // (2 * A)
    hi = (-B + r) // (2 * A) + 1

    def ok(i: int) -> bool:
        return A * i * i + B * i + C <= 0

    while ok(lo - 1):
        lo -= 1
    while not ok(lo) and lo <= hi:
        lo += 1
    while ok(hi + 1):
        hi += 1
    while not ok(hi) and hi >= lo:
        hi -= 1
    if lo > hi:
        return None
    return lo, hi


# -- direct coset enumeration -----------------------------------------------------


def _scale_to_int(offset: Coords, cols: Sequence[Coords]) -> tuple[int, tuple[int, int], list[tuple[int, int]]]:
    s = 1
    for v in (*offset, *(x for col in cols for x in col)):
        v = Fraction(v)
        s = s // gcd(s, v.denominator) * v.denominator
    o = (int(s * Fraction(offset[0])), int(s * Fraction(offset[1])))
    icols = [(int(s * Fraction(x)), int(s * Fraction(y))) for x, y in cols]
    return s, o, icols


def theta_coset_raw(
    fld: Field, offset: Coords, cols: Sequence[Coords], d, trunc
) -> QSeries:
    """Lattice sum over offset + span(cols) of q^(|x|^2 / d), exponent <= trunc.

    cols are one or two basis vectors in (1, w) coordinates; rational entries
    are allowed.  Enumeration bounds are exact.
    """
    d = Fraction(d)
    T = Fraction(trunc)
    if d <= 0:
        raise ValueError("scale must be positive")
    s, (ox, oy), icols = _scale_to_int(offset, cols)
    cap = s * s * d * T
    M = cap.numerator // cap.denominator
    terms: dict[Fraction, int] = {}
    s2d = s * s * d

    def put(norm: int) -> None:
        e = norm / s2d
        terms[e] = terms.get(e, 0) + 1

    if len(icols) == 1:
        (wx, wy) = icols[0]
        if wx == 0 and wy == 0:
            raise ValueError("degenerate lattice")
        Aq = fld.norm_xy(wx, wy)
        Bq = fld.norm_xy(ox + wx, oy + wy) - Aq - fld.norm_xy(ox, oy)
        rng = quad_le_range(Aq, Bq, fld.norm_xy(ox, oy) - M)
        if rng:
            for i in range(rng[0], rng[1] + 1):
                put(fld.norm_xy(ox + i * wx, oy + i * wy))
        return QSeries.from_exponents(terms, T)

    a, b, c = hnf2(icols)
    # points (ox + i a + j b, oy + j c); the y part depends on j alone
    if fld.half_basis:
        absD = abs(fld.D)
        # 4 N(x, y) = (2x + y)^2 + |D| y^2
        jr = quad_le_range(absD * c * c, 2 * absD * c * oy, absD * oy * oy - 4 * M)
        if jr:
            for j in range(jr[0], jr[1] + 1):
                y = oy + j * c
                rest = 4 * M - absD * y * y
                u0 = 2 * (ox + j * b) + y
                ir = quad_le_range(4 * a * a, 4 * a * u0, u0 * u0 - rest)
                if ir:
                    for i in range(ir[0], ir[1] + 1):
                        put(fld.norm_xy(ox + i * a + j * b, y))
    else:
        absD = abs(fld.D)
        jr = quad_le_range(absD * c * c, 2 * absD * c * oy, absD * oy * oy - M)
        if jr:
            for j in range(jr[0], jr[1] + 1):
                y = oy + j * c
                rest = M - absD * y * y
                x0 = ox + j * b
                ir = quad_le_range(a * a, 2 * a * x0, x0 * x0 - rest)
                if ir:
                    for i in range(ir[0], ir[1] + 1):
                        put(fld.norm_xy(x0 + i * a, y))
    return QSeries.from_exponents(terms, T)


def _ideal_cols(J: QIdeal) -> list[Coords]:
    q = J.q
    return [
        (Fraction(J.a, q), Fraction(0)),
        (Fraction(J.b, q), Fraction(J.c, q)),
    ]


# -- coset specifications -----------------------------------------------------------


@dataclass(frozen=True)
class CosetSpec:
    """A coset alpha + J of an ideal J inside O_K, with a theta scale factor."""

    field: Field
    alpha: QuadInt
    lattice: QIdeal
    d: Fraction

    def offset(self) -> Coords:
        return (Fraction(self.alpha.x), Fraction(self.alpha.y))


def coset_theta_direct(spec: CosetSpec, trunc) -> QSeries:
    """Direct lattice-point enumeration of theta(alpha + J; d)."""
    return theta_coset_raw(
        spec.field, spec.offset(), _ideal_cols(spec.lattice), spec.d, trunc
    )


def product_to_coset(r: int, k: int, s: int, ell: int) -> CosetSpec:
    """The coset theta data equal to the product theta(r, k) * theta(s, ell).

    With h = hcf(k, ell), k/h = mu^2 k0 and ell/h = lambda^2 l0 (k0, l0
    squarefree), the product is the theta function of
    alpha + J in Q[sqrt(-k0 l0)] with alpha = r lambda l0 + s mu sqrt(D),
    J = 2 h lambda l0 mu <mu k0, lambda sqrt(D)>, and d = 4 k ell l0 / h.
    Only the case where J is an ideal of the maximal order is representable
    here; otherwise split the coset first.
    """
    if k < 1 or ell < 1:
        raise ValueError("levels must be positive integers")
    h = gcd(k, ell)
    mu, k0 = squarefree_decompose(k // h)
    lam, l0 = squarefree_decompose(ell // h)
    D = -k0 * l0
    fld = field(D)
    m = 2 * h * lam * l0 * mu
    sx, sy = fld.sqrtD_xy()
    cols = [(m * mu * k0, 0), (m * lam * sx, m * lam * sy)]
    try:
        a, b, c = hnf2(cols)
    except ValueError:
        raise ValueError("degenerate level data")
    J = QIdeal(fld, 1, a, b, c)
    for gx, gy in ((a, 0), (b, c)):
        wx, wy = fld.omega_mul_xy(gx, gy)
        if not fld.elem(wx, wy) in J:
            raise ValueError(
                "the product lattice is not an ideal; split the coset first"
            )
    alpha = fld.elem(r * lam * l0, 0) + s * mu * fld.elem(sx, sy)
    d = Fraction(4 * k * ell * l0, h)
    return CosetSpec(fld, alpha, J, d)


@dataclass(frozen=True)
class RayThetaSpec:
    """Ray class theta data w * theta(x; scale) equal to some coset theta."""

    ray_class: RayClassRef
    scale: Fraction
    weight: int

    def theta(self, trunc) -> QSeries:
        return ray_theta(self.ray_class, self.scale, trunc).scaled(self.weight)


def coset_to_rayclass(spec: CosetSpec) -> RayThetaSpec:
    """Rewrite theta(alpha + J; d) as w_F * theta([alpha H^-1]_F; d / N(H)).

    H = alpha O + J, F = J H^-1; the weight w_F counts units congruent to 1
    mod F.  Requires alpha not in J (the coset must avoid the origin).
    """
    if spec.alpha in spec.lattice:
        raise ValueError("alpha lies in the lattice; the coset contains 0")
    alpha_ideal = principal_ideal(spec.alpha)
    H = alpha_ideal.add(spec.lattice)
    F = Conductor(spec.lattice.mul(H.inverse()))
    x = RayClassRef(alpha_ideal.mul(H.inverse()), F)
    _, w = units_mod_conductor(F)
    return RayThetaSpec(x, spec.d / H.norm(), w)


# -- coset decomposition --------------------------------------------------------------


def decompose_coset(
    fld: Field,
    offset: Coords,
    cols: Sequence[Coords],
    sub_cols: Sequence[Coords],
) -> list[Coords]:
    """Offsets w such that offset + L splits as the disjoint union of
    (offset + w) + Lsub over a transversal of L / Lsub.

    Lsub must be a finite-index sublattice of L; raises on infinite index or
    on vectors outside L.
    """
    if len(cols) != len(sub_cols):
        raise ValueError("lattice ranks differ: infinite index")
    if len(cols) == 1:
        (lx, ly), (mx, my) = cols[0], sub_cols[0]
        lx, ly, mx, my = (Fraction(v) for v in (lx, ly, mx, my))
        ratio = None
        for num, den in ((mx, lx), (my, ly)):
            if den != 0:
                ratio = num / den
        if ratio is None or ratio == 0 or ratio.denominator != 1:
            raise ValueError("sublattice vector is not an integer multiple")
        if mx != ratio * lx or my != ratio * ly:
            raise ValueError("sublattice vector is not parallel")
        n = abs(int(ratio))
        ox, oy = Fraction(offset[0]), Fraction(offset[1])
        return [(ox + t * lx, oy + t * ly) for t in range(n)]

    (a1, a2), (b1, b2) = (tuple(map(Fraction, c)) for c in cols)
    det = a1 * b2 - a2 * b1
    if det == 0:
        raise ValueError("degenerate lattice basis")
    m_cols = []
    for sx, sy in sub_cols:
        sx, sy = Fraction(sx), Fraction(sy)
        u = (sx * b2 - sy * b1) / det
        v = (a1 * sy - a2 * sx) / det
        if u.denominator != 1 or v.denominator != 1:
            raise ValueError("sublattice is not contained in the lattice")
        m_cols.append((int(u), int(v)))
    try:
        ha, hb, hc = hnf2(m_cols)
    except ValueError:
        raise ValueError("sublattice has infinite index")
    ox, oy = Fraction(offset[0]), Fraction(offset[1])
    out = []
    for i in range(ha):
        for j in range(hc):
            wx = i * a1 + j * b1
            wy = i * a2 + j * b2
            out.append((ox + wx, oy + wy))
    return out


def split_coset(spec: CosetSpec, sub: QIdeal) -> list[CosetSpec]:
    """Split a coset of an ideal into cosets of a finite-index subideal."""
    offsets = decompose_coset(
        spec.field, spec.offset(), _ideal_cols(spec.lattice), _ideal_cols(sub)
    )
    out = []
    for ox, oy in offsets:
        if ox.denominator != 1 or oy.denominator != 1:
            raise ValueError("offsets left the maximal order")
        out.append(CosetSpec(spec.field, spec.field.elem(int(ox), int(oy)), sub, spec.d))
    return out


# -- the two relation checkers ----------------------------------------------------------


def check_cross_field(
    D: int,
    Dprime: int,
    F: Conductor,
    Fprime: Conductor,
    J: QIdeal,
    Jprime: QIdeal,
    d,
    trunc,
    bound: Optional[int] = None,
    name: str = "cross_field",
) -> VerificationReport:
    """Theta difference of A[J] - S[J] over K against A'[J'] - S'[J'] over K'.

    The caller supplies the pair (J, J') of norms of one ideal of the
    composite field; the composite field itself is never represented.  The
    scale d only rescales every exponent by 1/d on both sides, so equality
    checked at one d is equality for all d.
    """
    started = time.perf_counter()
    chi = CharacterPsi(D, Dprime)
    chip = CharacterPsi(Dprime, D)
    if not admissible(chi, F, chip, Fprime):
        raise ValueError("conductor pair is not admissible")
    A, S = compute_skew_sets(chi, F, bound)
    Ap, Sp = compute_skew_sets(chip, Fprime, bound)
    xJ = RayClassRef(J, F)
    xJp = RayClassRef(Jprime, Fprime)
    combo = (ClassCombo.sum_of(A) - ClassCombo.sum_of(S)).times(xJ)
    combop = (ClassCombo.sum_of(Ap) - ClassCombo.sum_of(Sp)).times(xJp)
    lhs = ray_theta(combo, d, trunc)
    rhs = ray_theta(combop, d, trunc)
    params = {
        "D": D,
        "Dprime": Dprime,
        "F": list(F.ideal.key[1:]),
        "Fprime": list(Fprime.ideal.key[1:]),
        "J": list(J.key),
        "Jprime": list(Jprime.key),
        "d": Fraction(d),
    }
    return compare_series_report(name, params, lhs, rhs, trunc, started)


def _is_prime_ideal(P: QIdeal) -> bool:
    return P.is_integral and factor_ideal(P) == {P: 1}


def check_descent(
    F: Conductor,
    P: QIdeal,
    J: QIdeal,
    B: Sequence[RayClassRef],
    T: Sequence[RayClassRef],
    d,
    trunc,
    name: str = "descent",
) -> VerificationReport:
    """Inverse images of B and its coset T = B[P/conj(P)] in the ray class
    group with conductor F*P give the same theta difference as B and T.

    Hypotheses checked: F self-conjugate, P maximal and prime to F, J prime
    to P*F, B contains both the square of the skew class of P and the skew
    class of J, and T is exactly B times the skew class of P.
    """
    started = time.perf_counter()
    fld = F.field
    if not F.self_conjugate:
        raise ValueError("conductor must be self-conjugate")
    if not _is_prime_ideal(P):
        raise ValueError("P must be a maximal ideal")
    if not P.is_coprime(F.ideal):
        raise ValueError("P must be prime to the conductor")
    FP = Conductor(F.ideal.mul(P))
    xJ = RayClassRef(J, FP)  # raises if J meets P*F
    skew_p = RayClassRef(P.mul(P.conj().inverse()), F)
    skew_j = RayClassRef(J.mul(J.conj().inverse()), F)
    if not any((skew_p * skew_p).same_class(b) for b in B):
        raise ValueError("B must contain the squared skew class of P")
    if not any(skew_j.same_class(b) for b in B):
        raise ValueError("B must contain the skew class of J")
    t_expect = [b * skew_p for b in B]
    if len(T) != len(B) or not all(any(t.same_class(u) for u in t_expect) for t in T):
        raise ValueError("T must be the coset of B by the skew class of P")

    b_lift = lift_classes(list(B), FP)
    t_lift = lift_classes(list(T), FP)
    lhs = ray_theta(
        (ClassCombo.sum_of(b_lift) - ClassCombo.sum_of(t_lift)).times(xJ), d, trunc
    )
    xJ_small = RayClassRef(J, F)
    rhs = ray_theta(
        (ClassCombo.sum_of(list(B)) - ClassCombo.sum_of(list(T))).times(xJ_small),
        d,
        trunc,
    )
    params = {
        "D": fld.D,
        "F": list(F.ideal.key[1:]),
        "P": list(P.key),
        "J": list(J.key),
        "d": Fraction(d),
        "lifted_sizes": [len(b_lift), len(t_lift)],
    }
    return compare_series_report(name, params, lhs, rhs, trunc, started)
