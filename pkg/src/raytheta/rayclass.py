"""Ray classes modulo a conductor and their theta series.

The pieces here: equality of ray classes (reduced to a principality test plus
one congruence), Chinese-remainder component notation for classes of
principal ideals, the quadratic character a partner field induces on ray
classes, the skew class sets it splits into, and theta series summed over the
integral ideals of a class.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .quadfield import (
    Field,
    QIdeal,
    QuadInt,
    _extgcd,
    enumerate_ideals,
    factor_ideal,
    field,
    ideal_from_gens,
    is_principal,
    legendre,
    factorint,
    principal_ideal,
    split_prime,
    valuation,
)
from .qseries import QSeries


class NotCoprimeError(ValueError):
    """An ideal or element meets the conductor; the requested test is undefined."""


class ClosureError(RuntimeError):
    """Skew-class enumeration did not close at the bound; increase the bound."""


class SkewOverlapError(ValueError):
    """The skew sets coincide at this conductor: some conjugation-symmetric
    class carries character value -1, so no character separates the subgroup
    from its coset and the cross-field relation machinery does not apply."""


# -- conductors ----------------------------------------------------------------


class Conductor:
    """An integral nonzero ideal used as the modulus for ray classes."""

    __slots__ = ("ideal", "factors", "self_conjugate")

    def __init__(self, ideal: QIdeal) -> None:
        if not ideal.is_integral:
            raise ValueError("a conductor must be an integral ideal")
        self.ideal = ideal
        self.factors = factor_ideal(ideal)
        self.self_conjugate = ideal.conj() == ideal

    @property
    def field(self) -> Field:
        return self.ideal.field

    @property
    def primes(self) -> list[QIdeal]:
        return list(self.factors)

    @property
    def key(self) -> tuple:
        return (self.field.D, self.ideal.key)

    def norm(self) -> int:
        return int(self.ideal.norm())

    def divides(self, other: "Conductor") -> bool:
        return self.ideal.divides(other.ideal)

    def __eq__(self, other) -> bool:
        return isinstance(other, Conductor) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Conductor({self.ideal!r} in Q[sqrt({self.field.D})])"


def conductor_of(g: Union[QuadInt, QIdeal, int], fld: Optional[Field] = None) -> Conductor:
    if isinstance(g, QIdeal):
        return Conductor(g)
    if isinstance(g, int):
        if fld is None:
            raise ValueError("field required for an integer conductor")
        g = fld.elem(g)
    return Conductor(principal_ideal(g))


# -- ray class equality ----------------------------------------------------------


_SAME_CACHE: dict[tuple, bool] = {}


def _coprime_to_conductor(I: QIdeal, F: Conductor) -> bool:
    return all(valuation(I, P) == 0 for P in F.primes)


def in_k1f(lam: QuadInt, mu: QuadInt, F: Conductor) -> bool:
    """Whether lam/mu is 1 modulo F.

    Both elements must generate ideals with equal valuations at every prime
    of F (otherwise the quotient is not even prime to F and NotCoprimeError
    is raised).  With H = hcf(lam O, mu O) the test is lam - mu in F*H.
    """
    if lam.is_zero() or mu.is_zero():
        raise ValueError("need nonzero elements")
    Il, Im = principal_ideal(lam), principal_ideal(mu)
    for P in F.primes:
        if valuation(Il, P) != valuation(Im, P):
            raise NotCoprimeError("quotient is not prime to the conductor")
    H = Il.add(Im)
    return (lam - mu) in F.ideal.mul(H)


def _same_ray_class_raw(I: QIdeal, J: QIdeal, F: Conductor) -> bool:
    key = (F.key, I.key, J.key)
    hit = _SAME_CACHE.get(key)
    if hit is not None:
        return hit
    fld = F.field
    LI = QIdeal(fld, 1, I.a, I.b, I.c)
    LJ = QIdeal(fld, 1, J.a, J.b, J.c)
    # I J^{-1} = Mnum / n with Mnum integral and n a positive integer
    Mnum = LI.mul(LJ.conj()).scaled(J.q)
    n = I.q * LJ.a * LJ.c
    gen = is_principal(Mnum)
    if gen is None:
        out = False
    else:
        delta = gen[0]
        nelt = fld.elem(n)
        H = principal_ideal(delta).add(principal_ideal(nelt))
        FH = F.ideal.mul(H)
        out = any(((u * delta) - nelt) in FH for u in fld.units)
    _SAME_CACHE[key] = out
    _SAME_CACHE[(F.key, J.key, I.key)] = out
    return out


def same_ray_class(I: QIdeal, J: QIdeal, F: Conductor) -> bool:
    """[I]_F == [J]_F.  Both ideals must be prime to F."""
    if not (_coprime_to_conductor(I, F) and _coprime_to_conductor(J, F)):
        raise NotCoprimeError("ideals must be prime to the conductor")
    return _same_ray_class_raw(I, J, F)


# -- ray class references ---------------------------------------------------------


_CANONICAL_CACHE: dict[tuple, QIdeal] = {}


class RayClassRef:
    """A ray class held as a representative ideal plus its conductor."""

    __slots__ = ("rep", "conductor", "_canonical")

    def __init__(self, rep: QIdeal, conductor: Conductor, check: bool = True) -> None:
        if check and not _coprime_to_conductor(rep, conductor):
            raise NotCoprimeError("representative is not prime to the conductor")
        self.rep = rep
        self.conductor = conductor
        self._canonical: Optional[QIdeal] = None

    def same_class(self, other: "RayClassRef") -> bool:
        if self.conductor != other.conductor:
            return False
        return _same_ray_class_raw(self.rep, other.rep, self.conductor)

    def contains_ideal(self, I: QIdeal) -> bool:
        return _same_ray_class_raw(I, self.rep, self.conductor)

    def __mul__(self, other: "RayClassRef") -> "RayClassRef":
        if self.conductor != other.conductor:
            raise ValueError("class product needs one common conductor")
        return RayClassRef(self.rep.mul(other.rep), self.conductor, check=False)

    def inv(self) -> "RayClassRef":
        return RayClassRef(self.rep.inverse(), self.conductor, check=False)

    def canonical_rep(self) -> QIdeal:
        """Smallest-norm integral ideal in the class, ties broken by HNF order."""
        if self._canonical is None:
            key = (self.conductor.key, self.rep.key)
            hit = _CANONICAL_CACHE.get(key)
            if hit is None:
                F = self.conductor
                bound = 8
                while hit is None:
                    for I in enumerate_ideals(F.field, bound, coprime_to=F.ideal):
                        if _same_ray_class_raw(I, self.rep, F):
                            hit = I
                            break
                    bound *= 2
                _CANONICAL_CACHE[key] = hit
            self._canonical = hit
        return self._canonical

    def canonical_key(self) -> tuple:
        I = self.canonical_rep()
        return (int(I.norm()), I.a, I.b, I.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RayClassRef):
            return NotImplemented
        return self.conductor == other.conductor and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((self.conductor.key, self.canonical_key()))

    def __repr__(self) -> str:
        return f"[{self.rep!r}]_{self.conductor.ideal!r}"


def ray_class(g: Union[QuadInt, QIdeal, int], F: Conductor) -> RayClassRef:
    if isinstance(g, int):
        g = F.field.elem(g)
    if isinstance(g, QuadInt):
        g = principal_ideal(g)
    return RayClassRef(g, F)


def reduce_class(x: RayClassRef, smaller: Conductor) -> RayClassRef:
    """Image of the class under the reduction to a divisor of its conductor."""
    if not smaller.divides(x.conductor):
        raise ValueError("target conductor must divide the source conductor")
    return RayClassRef(x.rep, smaller, check=False)


def units_mod_conductor(F: Conductor) -> tuple[list[QuadInt], int]:
    """Units congruent to 1 modulo F, and their count w_F."""
    one = F.field.one
    us = [u for u in F.field.units if (u - one) in F.ideal]
    return us, len(us)


def unit_residues_mod(Q: QIdeal) -> list[QuadInt]:
    """The invertible residues of the quotient ring by an integral ideal Q.

    Residues run over the transversal {x + y w : 0 <= x < a, 0 <= y < c} of
    Q's HNF lattice; invertibility is the hcf test against Q.
    """
    if not Q.is_integral:
        raise ValueError("need an integral ideal")
    fld = Q.field
    out = []
    for y in range(Q.c):
        for x in range(Q.a):
            g = fld.elem(x, y)
            if g.is_zero():
                continue
            if ideal_from_gens([g]).add(Q).is_maximal_order():
                out.append(g)
    return out


def lift_classes(xs: Sequence["RayClassRef"], big: Conductor) -> list["RayClassRef"]:
    """Inverse image of a set of classes under reduction from a bigger conductor.

    big must factor as Q * F with Q coprime to F (the conductor of xs); the
    kernel of the reduction is the set of classes with component 1 at F and
    any invertible component at Q, and each class lifts to its kernel coset.
    """
    if not xs:
        raise ValueError("nothing to lift")
    F = xs[0].conductor
    Q = big.ideal.mul(F.ideal.inverse())
    if not Q.is_integral:
        raise ValueError("the source conductor must divide the target")
    if Q.is_maximal_order():
        return list(xs)
    if not Q.is_coprime(F.ideal):
        raise ValueError("the conductor extension must be coprime to the base")
    kernel: list[RayClassRef] = []
    for r in unit_residues_mod(Q):
        k = crt_class([(Q, r), (F.ideal, F.field.one)], Conductor(big.ideal))
        if not any(k.same_class(x) for x in kernel):
            kernel.append(k)
    out: list[RayClassRef] = []
    for x in xs:
        lifted = _coprime_lift(x, big)
        for k in kernel:
            cand = k * lifted
            if not any(cand.same_class(o) for o in out):
                out.append(cand)
    return out


def _coprime_lift(x: "RayClassRef", big: Conductor) -> "RayClassRef":
    """The class of x's representative at the bigger conductor, switching to
    an equivalent representative when the original meets the new primes."""
    try:
        return RayClassRef(x.rep, big)
    except NotCoprimeError:
        pass
    bound = 8
    while True:
        for I in enumerate_ideals(big.field, bound, coprime_to=big.ideal):
            if _same_ray_class_raw(I, x.rep, x.conductor):
                return RayClassRef(I, big)
        bound *= 2


# -- Chinese remainder classes -----------------------------------------------------


def _solve_columns(cols: Sequence[tuple[int, int]], target: tuple[int, int]) -> Optional[list[int]]:
    """Integer coefficients expressing target in the Z-span of the columns."""
    n = len(cols)
    a = 0
    a_comb = [0] * n
    b = c = 0
    bc_comb = [0] * n

    def axpy(s, u, t, idx=None, v=None):
        out = [s * ui for ui in u]
        if idx is not None:
            out[idx] += t
        else:
            for i2, vi in enumerate(v):
                out[i2] += t * vi
        return out

    for idx, (x, y) in enumerate(cols):
        if x == 0 and y == 0:
            continue
        if y == 0:
            g, s, t = _extgcd(a, x)
            a_comb = axpy(s, a_comb, t, idx=idx)
            a = g
            continue
        if c == 0:
            b, c = x, y
            bc_comb = [0] * n
            bc_comb[idx] = 1
            continue
        g, s, t = _extgcd(c, y)
        elim_x = (c * x - y * b) // g
        elim_comb = [c // g * (1 if i2 == idx else 0) - y // g * bc_comb[i2] for i2 in range(n)]
        g2, s2, t2 = _extgcd(a, elim_x)
        a_comb = axpy(s2, a_comb, t2, v=elim_comb)
        a = g2
        bc_comb = axpy(s, bc_comb, t, idx=idx)
        b, c = s * b + t * x, g
    tx, ty = target
    if c == 0:
        if ty != 0:
            return None
        j = 0
        rem = tx
        coeffs_j = [0] * n
    else:
        j, r = divmod(ty, c)
        if r:
            return None
        rem = tx - j * b
        coeffs_j = bc_comb
    if a == 0:
        if rem != 0:
            return None
        i = 0
    else:
        i, r2 = divmod(rem, a)
        if r2:
            return None
    return [i * ai + j * bj for ai, bj in zip(a_comb, coeffs_j)]


def idempotent_for(Q: QIdeal, M: QIdeal) -> QuadInt:
    """An element congruent to 1 mod Q and 0 mod M, for coprime integral Q, M."""
    fld = Q.field
    q1, q2 = Q.basis()
    m1, m2 = M.basis()
    cols = [(q1.x, q1.y), (q2.x, q2.y), (m1.x, m1.y), (m2.x, m2.y)]
    coeffs = _solve_columns(cols, (1, 0))
    if coeffs is None:
        raise NotCoprimeError("the two ideals are not coprime")
    e = coeffs[2] * m1 + coeffs[3] * m2
    assert (fld.one - e) in Q and e in M
    return e


def crt_class(
    components: Sequence[tuple[QIdeal, Union[QuadInt, int]]],
    conductor: Optional[Conductor] = None,
) -> RayClassRef:
    """The class [g]_F of the element matching the given residue at each factor.

    Factors must be pairwise coprime with product F; every residue has to be
    invertible at its factor.  Integer residues are allowed at any factor.
    """
    if not components:
        raise ValueError("at least one component required")
    fld = components[0][0].field
    parts: list[tuple[QIdeal, QuadInt]] = []
    for Q, r in components:
        if isinstance(r, int):
            r = fld.elem(r)
        parts.append((Q, r))
    F_ideal = fld.maximal_order
    for Q, _ in parts:
        if not F_ideal.is_coprime(Q):
            raise NotCoprimeError("conductor factors must be pairwise coprime")
        F_ideal = F_ideal.mul(Q)
    if conductor is not None and conductor.ideal != F_ideal:
        raise ValueError("factors do not multiply to the stated conductor")
    F = conductor if conductor is not None else Conductor(F_ideal)
    gamma = fld.elem(0)
    for Q, r in parts:
        if not ideal_from_gens([r]).add(Q).is_maximal_order():
            raise NotCoprimeError(f"residue {r!r} is not invertible at its factor")
        M = F_ideal.mul(Q.inverse())
        gamma = gamma + r * idempotent_for(Q, M)
    return RayClassRef(principal_ideal(gamma), F)


# -- the quadratic character -------------------------------------------------------


def _disc_of(D: int) -> int:
    return D if D % 4 == 1 else 4 * D


def psi_conductor(D: int, Dprime: int) -> Conductor:
    """Conductor of the character that the partner field D' induces on Q[sqrt(D)].

    The value is the principal ideal (2^a * |disc'| / gcd(|disc|, |disc'|))
    where a = 1 exactly when both discriminants and the discriminant of the
    real partner field are all even.
    """
    if D >= 0 or Dprime >= 0 or D == Dprime:
        raise ValueError("need two distinct negative fundamental D values")
    dt, dpt = _disc_of(D), _disc_of(Dprime)
    g = gcd(D, Dprime)
    dpp = D * Dprime // (g * g)
    dppt = dpp if dpp % 4 == 1 else 4 * dpp
    a = 1 if (dt % 2 == 0 and dpt % 2 == 0 and dppt % 2 == 0) else 0
    m = 2**a * abs(dpt) // gcd(abs(dt), abs(dpt))
    fld = field(D)
    return Conductor(principal_ideal(fld.elem(m)))


class CharacterPsi:
    """Ray class character I -> phi'(N(I)) built from the partner field's
    quadratic residue symbols; values are +-1 and multiplicative."""

    __slots__ = ("D", "Dprime", "field", "conductor", "_norm_cache")

    def __init__(self, D: int, Dprime: int) -> None:
        self.D = D
        self.Dprime = Dprime
        self.field = field(D)
        self.conductor = psi_conductor(D, Dprime)
        self._norm_cache: dict[int, int] = {}

    def value_on_norm(self, n: Union[int, Fraction]) -> int:
        if isinstance(n, Fraction):
            return self.value_on_norm(n.numerator) * self.value_on_norm(n.denominator)
        n = abs(n)
        if gcd(n, 2 * abs(self.Dprime)) != 1:
            raise NotCoprimeError(f"norm {n} is not prime to 2 D'")
        hit = self._norm_cache.get(n)
        if hit is None:
            hit = 1
            for p, e in factorint(n).items():
                if e % 2:
                    hit *= legendre(self.Dprime, p)
            self._norm_cache[n] = hit
        return hit

    def value(self, I: QIdeal) -> int:
        if not I.is_integral:
            raise ValueError("the character is evaluated on integral ideals")
        return self.value_on_norm(int(I.norm()))


def admissible(chi: CharacterPsi, F: Conductor, chip: CharacterPsi, Fp: Conductor) -> bool:
    """Whether (F, F') is an admissible conductor pair for the two fields."""
    return (
        F.self_conjugate
        and Fp.self_conjugate
        and chi.conductor.divides(F)
        and chip.conductor.divides(Fp)
        and F.norm() * chi.field.disc == Fp.norm() * chip.field.disc
    )


# -- skew class sets ------------------------------------------------------------------


_AS_CACHE: dict[tuple, tuple] = {}


def _skew_sets_at_bound(
    chi: CharacterPsi, F: Conductor, bound: int
) -> tuple[list[RayClassRef], list[RayClassRef]]:
    fld = chi.field
    bad = 2 * abs(chi.D) * abs(chi.Dprime)

    reps: list[QIdeal] = [fld.maximal_order]
    table: dict[tuple[int, int], int] = {}

    def class_of(rep: QIdeal) -> int:
        for k, known in enumerate(reps):
            if _same_ray_class_raw(rep, known, F):
                return k
        reps.append(rep)
        return len(reps) - 1

    def tmul(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        key = (min(i, j), max(i, j))
        hit = table.get(key)
        if hit is None:
            hit = class_of(reps[i].mul(reps[j]))
            table[key] = hit
        return hit

    # multiplicative sweep over primes: track (norm, psi value, skew class)
    items: list[tuple[int, int, int]] = [(1, 1, 0)]
    from .quadfield import primes_upto, _prime_divides

    for p in primes_upto(bound):
        if bad % p == 0:
            continue
        rec = split_prime(fld, p)
        powers: list[tuple[int, int, int]] = []
        if rec.kind == "inert":
            n = p * p
            while n <= bound:
                powers.append((n, 1, 0))
                n *= p * p
        else:
            assert rec.kind == "split"
            P, Pb = rec.prime, rec.conj
            okP = not _prime_divides(P, F.ideal)
            okPb = not _prime_divides(Pb, F.ideal)
            if not (okP or okPb):
                continue
            sv = legendre(chi.Dprime, p)
            cP = class_of(P.mul(Pb.inverse())) if okP else 0
            cPb = class_of(Pb.mul(P.inverse())) if okPb else 0
            emax, n = 0, p
            while n <= bound:
                emax += 1
                n *= p
            ci = 0
            for i in range(0, emax + 1):
                if i and not okP:
                    break
                if i:
                    ci = tmul(ci, cP)
                cij = ci
                for j in range(0, emax + 1 - i):
                    if j and not okPb:
                        break
                    if j:
                        cij = tmul(cij, cPb)
                    if i or j:
                        powers.append((p ** (i + j), sv ** (i + j), cij))
        if not powers:
            continue
        items += [
            (n * np, s * sp, tmul(c, cp))
            for n, s, c in items
            for np, sp, cp in powers
            if n * np <= bound
        ]

    a_idx = {c for _, s, c in items if s == 1}
    s_idx = {c for _, s, c in items if s == -1}
    overlap = a_idx & s_idx
    if overlap:
        raise SkewOverlapError(
            "skew sets overlap at this conductor (witnessed by ideals of "
            f"norm <= {bound}); a conjugation-symmetric class has character "
            "value -1, so the subgroup equals its coset"
        )

    def closed() -> bool:
        if len(a_idx) != len(s_idx):
            return False
        for i in a_idx:
            if any(tmul(i, j) not in a_idx for j in a_idx):
                return False
            if any(tmul(i, j) not in s_idx for j in s_idx):
                return False
        s0 = next(iter(s_idx), None)
        if s0 is not None and {tmul(s0, i) for i in a_idx} != s_idx:
            return False
        return True

    if not closed():
        raise ClosureError(
            f"skew classes did not close at enumeration bound {bound}; increase bound"
        )
    A = sorted((RayClassRef(reps[i], F, check=False) for i in a_idx), key=RayClassRef.canonical_key)
    S = sorted((RayClassRef(reps[i], F, check=False) for i in s_idx), key=RayClassRef.canonical_key)
    return A, S


def compute_skew_sets(
    chi: CharacterPsi, F: Conductor, bound: Optional[int] = None
) -> tuple[list[RayClassRef], list[RayClassRef]]:
    """The subgroup A of skew classes with character +1 and its coset S.

    Integral ideals prime to F with norm up to the bound are swept
    multiplicatively; each contributes the class of I/conj(I) to A or S
    according to its character value.  Group closure of the result is
    verified; on failure the bound is doubled a few times before giving up
    with ClosureError (never a silent partial answer).
    """
    if not F.self_conjugate:
        raise ValueError("the conductor must be self-conjugate")
    if not chi.conductor.divides(F):
        raise ValueError("the conductor must lie inside the character's conductor")
    cache_key = (chi.D, chi.Dprime, F.key, bound)
    hit = _AS_CACHE.get(cache_key)
    if hit is not None:
        return hit
    if bound is not None:
        out = _skew_sets_at_bound(chi, F, bound)
    else:
        b = 30 * F.norm()
        last: Optional[ClosureError] = None
        out = None
        for _ in range(4):
            try:
                out = _skew_sets_at_bound(chi, F, b)
                break
            except ClosureError as exc:
                last = exc
                b *= 2
        if out is None:
            raise last  # type: ignore[misc]
    _AS_CACHE[cache_key] = out
    return out


def skew_sets_to_json(chi: CharacterPsi, F: Conductor, A, S, bound) -> dict:
    return {
        "D": chi.D,
        "Dprime": chi.Dprime,
        "F": list(F.ideal.key[1:]),
        "bound": bound,
        "A": [list(x.canonical_key()[1:]) for x in A],
        "S": [list(x.canonical_key()[1:]) for x in S],
    }


def skew_sets_from_json(d: dict) -> tuple[CharacterPsi, Conductor, list[RayClassRef], list[RayClassRef]]:
    chi = CharacterPsi(d["D"], d["Dprime"])
    fld = chi.field
    a, b, c = d["F"]
    F = Conductor(QIdeal(fld, 1, a, b, c))
    A = [RayClassRef(QIdeal(fld, 1, *t), F) for t in d["A"]]
    S = [RayClassRef(QIdeal(fld, 1, *t), F) for t in d["S"]]
    return chi, F, A, S


# -- class combinations and theta series -----------------------------------------------


class ClassCombo:
    """Formal integer combination of ray classes over one conductor."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[int, RayClassRef]]) -> None:
        terms = tuple((int(c), x) for c, x in terms)
        if not terms:
            raise ValueError("empty combination")
        F = terms[0][1].conductor
        if any(x.conductor != F for _, x in terms):
            raise ValueError("all classes must share one conductor")
        self.terms = terms

    @classmethod
    def sum_of(cls, refs: Iterable[RayClassRef], coeff: int = 1) -> "ClassCombo":
        return cls([(coeff, x) for x in refs])

    @property
    def conductor(self) -> Conductor:
        return self.terms[0][1].conductor

    def __neg__(self) -> "ClassCombo":
        return ClassCombo([(-c, x) for c, x in self.terms])

    def __add__(self, other: "ClassCombo") -> "ClassCombo":
        return ClassCombo(self.terms + other.terms)

    def __sub__(self, other: "ClassCombo") -> "ClassCombo":
        return self + (-other)

    def times(self, ref: RayClassRef) -> "ClassCombo":
        return ClassCombo([(c, x * ref) for c, x in self.terms])


ComboLike = Union[ClassCombo, RayClassRef]


def _as_combo(W: ComboLike) -> ClassCombo:
    if isinstance(W, RayClassRef):
        return ClassCombo([(1, W)])
    return W


def ray_theta(W: ComboLike, d, trunc) -> QSeries:
    """Theta series sum_x n_x sum_{I in x integral, N(I) <= d*trunc} q^(N(I)/d)."""
    combo = _as_combo(W)
    d = Fraction(d)
    T = Fraction(trunc)
    if d <= 0:
        raise ValueError("scale must be positive")
    F = combo.conductor
    fld = F.field
    cap = d * T
    bound = cap.numerator // cap.denominator
    terms: dict[Fraction, int] = {}
    pairs = [(c, x.rep) for c, x in combo.terms]
    for I in enumerate_ideals(fld, bound, coprime_to=F.ideal):
        total = 0
        for c, rep in pairs:
            if _same_ray_class_raw(I, rep, F):
                total += c
        if total:
            e = int(I.norm()) / d
            terms[e] = terms.get(e, 0) + total
    return QSeries.from_exponents(terms, T)
