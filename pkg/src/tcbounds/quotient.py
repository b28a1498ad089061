"""Membership tests in graded quotient rings R = P/J over a prime field.

Everything happens inside one graded piece of the ambient polynomial ring:
for graded ideals the degree-m part of I*R pulls back to (I + J)_m in P, so
ideal membership, Frobenius-power membership f^q in I^[q], and tight-closure
witness tests all reduce to exact rank computations on stacked product-row
matrices.  No normal-form machinery is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import Echelon, PreconditionError, PrimeField, SplitMix64, fp_echelon
from .bounds import generic_frobenius_bound, generic_ideal_bound
from .froeberg import DegreeType
from .macaulay import (
    Form,
    FormSystem,
    Monomial,
    form_product,
    form_vector,
    monomial_count,
    monomials_of_degree,
    product_row_matrix,
    random_form_system,
)

__all__ = [
    "GradedQuotient",
    "MembershipVerdict",
    "FrobeniusQuery",
    "WitnessScanReport",
    "TheoremCReport",
    "TheoremBReport",
    "ring_dimension_at",
    "ring_basis",
    "ideal_membership",
    "frobenius_power_ideal",
    "frobenius_membership",
    "tight_witness_scan",
    "verify_theorem_c",
    "verify_theorem_b",
]

# desk-scale cap: never test in a graded piece with more monomials than this
_MAX_ROWS = 100_000


class GradedQuotient:
    """R = P/J for a homogeneous system of relations J (J may be empty).

    Row-reduced degree-m matrices of J are cached per degree; after
    single-threaded warm-up the cache is read-only and safe to share.
    """

    def __init__(self, field: PrimeField, v: int, modulus: FormSystem | None = None):
        if v < 1:
            raise PreconditionError(f"need at least one variable, got v={v}")
        if modulus is None:
            modulus = FormSystem(field=field, v=v, forms=())
        if modulus.field != field:
            raise PreconditionError("modulus field does not match ring field")
        if modulus.v != v:
            raise PreconditionError("modulus variable count does not match ring")
        for f in modulus.forms:
            if f.degree < 1:
                raise PreconditionError("modulus forms must have degree >= 1")
        self.field = field
        self.v = v
        self.modulus = modulus
        self._relation_echelons: dict[int, Echelon] = {}

    @property
    def krull_dimension(self) -> int:
        # the relations used here are regular sequences by construction
        return self.v - len(self.modulus.forms)

    def relation_echelon(self, m: int) -> Echelon:
        if m < 0:
            raise PreconditionError(f"degree must be >= 0, got {m}")
        cached = self._relation_echelons.get(m)
        if cached is None:
            cached = fp_echelon(product_row_matrix(self.modulus, m), self.field)
            self._relation_echelons[m] = cached
        return cached


def ring_dimension_at(ring: GradedQuotient, m: int) -> int:
    """dim_k R_m = dim P_m - rank(J at m)."""
    return monomial_count(ring.v, m) - ring.relation_echelon(m).rank


def ring_basis(ring: GradedQuotient, m: int) -> list[Monomial]:
    """Monomials whose classes form a basis of R_m (the non-pivot
    coordinates of the reduced degree-m matrix of J)."""
    pivots = set(ring.relation_echelon(m).pivot_columns)
    return [
        mono
        for i, mono in enumerate(monomials_of_degree(ring.v, m))
        if i not in pivots
    ]


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of one rank test: contained iff appending the element does
    not raise the rank."""

    contained: bool
    degree: int
    rank_without: int
    rank_with: int


def _check_system(ring: GradedQuotient, system: FormSystem) -> None:
    if system.field != ring.field:
        raise PreconditionError("ideal field does not match ring field")
    if system.v != ring.v:
        raise PreconditionError("ideal variable count does not match ring")


def _combined_echelon(ring: GradedQuotient, ideal: FormSystem, m: int) -> Echelon:
    # span of (I + J)_m: the ideal's product rows stacked over the cached
    # reduced rows of J
    rows_i = product_row_matrix(ideal, m)
    rows_j = ring.relation_echelon(m).rows
    return fp_echelon(np.vstack([rows_j, rows_i]), ring.field)


def ideal_membership(ring: GradedQuotient, ideal: FormSystem, f: Form) -> MembershipVerdict:
    """Is f in I*R?  Tested in degree deg f: f in (I + J)_{deg f} in P."""
    _check_system(ring, ideal)
    if f.v != ring.v:
        raise PreconditionError("form variable count does not match ring")
    ech = _combined_echelon(ring, ideal, f.degree)
    contained = ech.contains(form_vector(f, ring.field.p))
    return MembershipVerdict(
        contained=contained,
        degree=f.degree,
        rank_without=ech.rank,
        rank_with=ech.rank + (0 if contained else 1),
    )


def _check_prime_power(q: int, p: int) -> None:
    r = q
    while r > 1 and r % p == 0:
        r //= p
    if r != 1:
        raise PreconditionError(f"q={q} is not a power of the characteristic {p}")


def _frobenius_power_form(f: Form, q: int) -> Form:
    # (sum c_e x^e)^q = sum c_e x^(qe) over F_p: Frobenius is additive and
    # c^q = c; scaling every exponent by q preserves the canonical order
    return Form(
        v=f.v,
        degree=f.degree * q,
        terms=tuple((tuple(e * q for e in exps), c) for exps, c in f.terms),
    )


def frobenius_power_ideal(ideal: FormSystem, q: int) -> FormSystem:
    """I^[q] = (f_1^q, ..., f_n^q), computed by exact exponent scaling."""
    _check_prime_power(q, ideal.field.p)
    return FormSystem(
        field=ideal.field,
        v=ideal.v,
        forms=tuple(_frobenius_power_form(f, q) for f in ideal.forms),
    )


def frobenius_membership(
    ring: GradedQuotient, ideal: FormSystem, f: Form, q: int
) -> MembershipVerdict:
    """Is f^q in I^[q]*R?  True for some q = p^e iff f lies in the
    Frobenius closure of I*R."""
    _check_prime_power(q, ring.field.p)
    return ideal_membership(
        ring, frobenius_power_ideal(ideal, q), _frobenius_power_form(f, q)
    )


@dataclass(frozen=True)
class FrobeniusQuery:
    """One tight-closure test instance: does witness * f^q land in I^[q]
    for every listed q?  A passing witness is evidence for f in (I*R)^*,
    never a certificate (the definition quantifies over almost all q)."""

    f: Form
    ideal: FormSystem
    q_list: tuple[int, ...]
    witness: Form | None = None

    def __post_init__(self) -> None:
        p = self.ideal.field.p
        if not self.q_list:
            raise PreconditionError("q_list must be nonempty")
        for q in self.q_list:
            _check_prime_power(q, p)
        if self.witness is not None and self.witness.is_zero:
            raise PreconditionError("witness must be nonzero")


@dataclass(frozen=True)
class WitnessScanReport:
    query: FrobeniusQuery
    witnesses: tuple[Form, ...]
    verdicts: tuple[tuple[MembershipVerdict, ...], ...]
    passing: tuple[int, ...]

    @property
    def found(self) -> bool:
        return bool(self.passing)


def _default_q_list(p: int, base_degree: int, v: int) -> tuple[int, ...]:
    qs = []
    q = p
    while q <= p**4 and monomial_count(v, q * base_degree + 2) <= _MAX_ROWS:
        qs.append(q)
        q *= p
    if not qs:
        raise PreconditionError("no usable q below the size cap; pass q_list")
    return tuple(qs)


def _default_witnesses(v: int) -> tuple[Form, ...]:
    # the ambient quotients here are hypersurface domains, so any nonzero
    # element works as a multiplier; monomials of degree <= 2 are plenty
    pool = []
    for deg in (0, 1, 2):
        for mono in monomials_of_degree(v, deg):
            pool.append(Form(v=v, degree=deg, terms=((mono.exponents, 1),)))
    return tuple(pool)


def tight_witness_scan(
    ring: GradedQuotient,
    ideal: FormSystem,
    f: Form,
    witnesses: tuple[Form, ...] | None = None,
    q_list: tuple[int, ...] | None = None,
) -> WitnessScanReport:
    """Scan candidate witnesses u: u passes q iff u * f^q lies in
    (I^[q] + J) at degree deg u + q deg f.  A u passing every listed q is
    recorded in `passing` (tight-closure evidence for f)."""
    _check_system(ring, ideal)
    if f.v != ring.v:
        raise PreconditionError("form variable count does not match ring")
    p = ring.field.p
    if q_list is None:
        q_list = _default_q_list(p, f.degree, ring.v)
    q_list = tuple(q_list)
    if witnesses is None:
        witnesses = _default_witnesses(ring.v)
    witnesses = tuple(witnesses)
    for u in witnesses:
        if u.is_zero:
            raise PreconditionError("witness must be nonzero")
        if u.v != ring.v:
            raise PreconditionError("witness variable count does not match ring")

    echelons: dict[tuple[int, int], Echelon] = {}
    powered = {q: (frobenius_power_ideal(ideal, q), _frobenius_power_form(f, q)) for q in q_list}
    rows: list[tuple[MembershipVerdict, ...]] = []
    passing = []
    for i, u in enumerate(witnesses):
        row = []
        for q in q_list:
            ideal_q, f_q = powered[q]
            prod = form_product(u, f_q, p)
            key = (q, prod.degree)
            ech = echelons.get(key)
            if ech is None:
                ech = _combined_echelon(ring, ideal_q, prod.degree)
                echelons[key] = ech
            contained = ech.contains(form_vector(prod, p))
            row.append(
                MembershipVerdict(
                    contained=contained,
                    degree=prod.degree,
                    rank_without=ech.rank,
                    rank_with=ech.rank + (0 if contained else 1),
                )
            )
        rows.append(tuple(row))
        if all(verdict.contained for verdict in row):
            passing.append(i)

    first = witnesses[passing[0]] if passing else None
    query = FrobeniusQuery(f=f, ideal=ideal, q_list=q_list, witness=first)
    return WitnessScanReport(
        query=query,
        witnesses=witnesses,
        verdicts=tuple(rows),
        passing=tuple(passing),
    )


@dataclass(frozen=True)
class TheoremCReport:
    """Ideal-inclusion verification: every monomial basis element of R at
    degree m0 + d + 1 + a_invariant must lie in the drawn ideal.  This
    statement is fully decidable at the given prime, so passed=False after
    the retry budget means the configuration genuinely failed."""

    degree_type: DegreeType
    p: int
    a_invariant: int
    bound: int
    seed: int
    draws: int
    system: FormSystem
    element_verdicts: tuple[tuple[tuple[int, ...], bool], ...]
    passed: bool


def _check_dimension(ring: GradedQuotient, dt: DegreeType) -> None:
    if ring.krull_dimension != dt.d + 1:
        raise PreconditionError(
            f"ring dimension {ring.krull_dimension} does not match d+1={dt.d + 1}"
        )


def verify_theorem_c(
    ring: GradedQuotient,
    dt: DegreeType,
    a_invariant: int,
    seed: int,
    max_redraws: int = 8,
) -> TheoremCReport:
    """Draw a random system of the degree type and test that all of R_B
    lies in the ideal, B = m0 + d + 1 + a_invariant.

    The statement holds for generic systems; a bad draw is redrawn from the
    same stream (bounded retries, draw count reported).
    """
    _check_dimension(ring, dt)
    bound = generic_ideal_bound(dt, a_invariant)
    if bound < 0:
        raise PreconditionError(f"inclusion degree {bound} is negative")
    if max_redraws < 1:
        raise PreconditionError(f"need at least one draw, got {max_redraws}")
    basis = ring_basis(ring, bound)
    dim_p = monomial_count(ring.v, bound)
    index = {mono.exponents: i for i, mono in enumerate(monomials_of_degree(ring.v, bound))}

    rng = SplitMix64(seed)
    draws = 0
    system = None
    verdicts: tuple[tuple[tuple[int, ...], bool], ...] = ()
    passed = False
    while draws < max_redraws and not passed:
        draws += 1
        system = random_form_system(ring.v, dt.degrees, ring.field, rng)
        ech = _combined_echelon(ring, system, bound)
        current = []
        for mono in basis:
            vec = np.zeros(dim_p, dtype=np.int64)
            vec[index[mono.exponents]] = 1
            current.append((mono.exponents, ech.contains(vec)))
        verdicts = tuple(current)
        passed = all(ok for _, ok in verdicts)
    return TheoremCReport(
        degree_type=dt,
        p=ring.field.p,
        a_invariant=a_invariant,
        bound=bound,
        seed=seed,
        draws=draws,
        system=system,
        element_verdicts=verdicts,
        passed=passed,
    )


@dataclass(frozen=True)
class TheoremBReport:
    """Frobenius-closure verification at degree B = m0 + d + 1: for each
    basis element the smallest q with b^q in I^[q], or None if no q up to
    q_max worked.  Unresolved elements are open, not counterexamples:
    membership in the Frobenius closure only requires SOME power q."""

    degree_type: DegreeType
    p: int
    bound: int
    q_max: int
    q_list: tuple[int, ...]
    seed: int
    ideal: FormSystem
    elements: tuple[tuple[tuple[int, ...], int | None], ...]
    all_resolved: bool
    note: str


def verify_theorem_b(
    ring: GradedQuotient,
    dt: DegreeType,
    q_max: int | None = None,
    seed: int = 7,
    ideal: FormSystem | None = None,
) -> TheoremBReport:
    """For each monomial basis element b of R at degree B = m0 + d + 1,
    search q in {1, p, p^2, ...} up to q_max for b^q in I^[q] + J.

    With ideal=None a system of the degree type is drawn from the seed;
    an explicit ideal (e.g. variables of a named fixture) must match the
    degree type.
    """
    _check_dimension(ring, dt)
    p = ring.field.p
    if q_max is None:
        q_max = p**4
    if q_max < 1:
        raise PreconditionError(f"q_max must be >= 1, got {q_max}")
    if ideal is None:
        ideal = random_form_system(ring.v, dt.degrees, ring.field, SplitMix64(seed))
    else:
        _check_system(ring, ideal)
        if tuple(sorted(ideal.degrees, reverse=True)) != dt.degrees:
            raise PreconditionError(
                f"ideal degrees {ideal.degrees} do not match degree type {dt.degrees}"
            )
    bound = generic_frobenius_bound(dt)

    q_list = [1]
    q = p
    while q <= q_max and monomial_count(ring.v, q * bound) <= _MAX_ROWS:
        q_list.append(q)
        q *= p

    basis = ring_basis(ring, bound)
    resolved: dict[int, int | None] = {i: None for i in range(len(basis))}
    for q in q_list:
        open_indices = [i for i, r in resolved.items() if r is None]
        if not open_indices:
            break
        ideal_q = frobenius_power_ideal(ideal, q)
        degree_q = q * bound
        ech = _combined_echelon(ring, ideal_q, degree_q)
        dim_p = monomial_count(ring.v, degree_q)
        index = {
            mono.exponents: i
            for i, mono in enumerate(monomials_of_degree(ring.v, degree_q))
        }
        for i in open_indices:
            scaled = tuple(e * q for e in basis[i].exponents)
            vec = np.zeros(dim_p, dtype=np.int64)
            vec[index[scaled]] = 1
            if ech.contains(vec):
                resolved[i] = q

    elements = tuple(
        (basis[i].exponents, resolved[i]) for i in range(len(basis))
    )
    return TheoremBReport(
        degree_type=dt,
        p=p,
        bound=bound,
        q_max=q_max,
        q_list=tuple(q_list),
        seed=seed,
        ideal=ideal,
        elements=elements,
        all_resolved=all(r is not None for _, r in elements),
        note=(
            "Frobenius-closure membership requires some power q; elements "
            f"unresolved up to q_max={q_max} are open at this scale, not "
            "counterexamples."
        ),
    )
