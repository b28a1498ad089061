"""Named quotient rings with known invariants for verification runs.

The hypersurface fixtures are diagonal equations x_0^k + ... + x_v-1^k,
smooth whenever the characteristic does not divide k, so the rings are
normal complete-intersection domains by construction and their a-invariants
are exact: sum of relation degrees minus number of variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import PreconditionError, PrimeField
from .bounds import a_invariant_complete_intersection
from .macaulay import Form, FormSystem
from .quotient import GradedQuotient

__all__ = ["DEFAULT_PRIME", "Fixture", "fixture_names", "make_fixture", "variables_ideal"]

DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class Fixture:
    name: str
    ring: GradedQuotient
    a_invariant: int
    description: str


def _diagonal_hypersurface(v: int, k: int, p: int) -> GradedQuotient:
    if k % p == 0:
        # char p | k kills every partial derivative: equation not smooth
        raise PreconditionError(
            f"characteristic {p} divides degree {k}: hypersurface not smooth"
        )
    field = PrimeField(p)
    form = Form.make(
        v, k, {tuple(k if i == j else 0 for i in range(v)): 1 for j in range(v)}
    )
    modulus = FormSystem(field=field, v=v, forms=(form,))
    return GradedQuotient(field, v, modulus)


def fixture_names() -> tuple[str, ...]:
    return ("fermat-cubic", "fermat-cubic-p2", "fermat-quartic", "poly-ring")


def make_fixture(name: str, p: int | None = None, d: int | None = None) -> Fixture:
    """Build a named ring.

    fermat-cubic     x^3+y^3+z^3 in three variables (default p=32003)
    fermat-cubic-p2  the same equation over F_2
    fermat-quartic   x^4+y^4+z^4 in three variables (default p=32003)
    poly-ring        the polynomial ring in d+1 variables (requires d)
    """
    if name == "fermat-cubic":
        prime = DEFAULT_PRIME if p is None else p
        return Fixture(
            name=name,
            ring=_diagonal_hypersurface(3, 3, prime),
            a_invariant=a_invariant_complete_intersection((3,), 3),
            description=f"F_{prime}[x,y,z] / (x^3+y^3+z^3)",
        )
    if name == "fermat-cubic-p2":
        if p not in (None, 2):
            raise PreconditionError(f"fermat-cubic-p2 is defined over F_2, got p={p}")
        return Fixture(
            name=name,
            ring=_diagonal_hypersurface(3, 3, 2),
            a_invariant=a_invariant_complete_intersection((3,), 3),
            description="F_2[x,y,z] / (x^3+y^3+z^3)",
        )
    if name == "fermat-quartic":
        prime = DEFAULT_PRIME if p is None else p
        return Fixture(
            name=name,
            ring=_diagonal_hypersurface(3, 4, prime),
            a_invariant=a_invariant_complete_intersection((4,), 3),
            description=f"F_{prime}[x,y,z] / (x^4+y^4+z^4)",
        )
    if name == "poly-ring":
        if d is None:
            raise PreconditionError("poly-ring fixture needs d (builds d+1 variables)")
        if d < 1:
            raise PreconditionError(f"d must be >= 1, got d={d}")
        prime = DEFAULT_PRIME if p is None else p
        v = d + 1
        return Fixture(
            name=name,
            ring=GradedQuotient(PrimeField(prime), v),
            a_invariant=a_invariant_complete_intersection((), v),
            description=f"F_{prime}[x_0..x_{v - 1}] (no relations)",
        )
    raise PreconditionError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")


def variables_ideal(ring: GradedQuotient, k: int) -> FormSystem:
    """The ideal generated by the first k variables."""
    if not (1 <= k <= ring.v):
        raise PreconditionError(f"need 1 <= k <= {ring.v}, got {k}")
    forms = tuple(
        Form.make(ring.v, 1, {tuple(1 if i == j else 0 for i in range(ring.v)): 1})
        for j in range(k)
    )
    return FormSystem(field=ring.field, v=ring.v, forms=forms)
