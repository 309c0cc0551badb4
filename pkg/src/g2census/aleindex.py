"""L^2 index of the linearised ASD operator on an ALE space.

For a finite subgroup of SU(2) with non-identity elements g and a bundle
whose adjoint representation has character chi on a Lie algebra of
dimension d, the index is

    -2 * p1 + (2/|Gamma|) * sum_g (chi(g) - d) / (2 - tr g).

``tr g`` is taken in the fundamental 2-dimensional representation of
SU(2) (so tr g = 2 cos(2 pi m / k) for the cyclic group Z_k); the
alternative reading of the trace in the adjoint representation is
available behind ``trace_convention="adjoint"``.

Traces and characters are exact throughout: Fractions where the values
are rational, sympy expressions otherwise, with the final sum simplified
symbolically.  The index of an elliptic problem must be an integer, so a
non-integral result triggers a warning (it signals inconsistent input
data rather than a computation error).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import sympy

ExactValue = Union[int, Fraction, sympy.Expr]


def _is_rational(x: ExactValue) -> bool:
    return isinstance(x, (int, Fraction))


def _to_sympy(x: ExactValue):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, int):
        return sympy.Integer(x)
    return x


@dataclass(frozen=True)
class GroupElementDatum:
    """One non-identity element: its fundamental trace and multiplicity."""

    trace: ExactValue
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if _is_rational(self.trace) and self.trace == 2:
            raise ValueError("trace 2 belongs to the identity, which is excluded")


@dataclass(frozen=True)
class FiniteSubgroupData:
    """A finite subgroup of SU(2) listed by non-identity element data."""

    order: int
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.order < 1:
            raise ValueError("group order must be positive")
        if sum(e.multiplicity for e in self.elements) != self.order - 1:
            raise ValueError("multiplicities must sum to |Gamma| - 1")


@dataclass(frozen=True)
class AdjointCharacter:
    """chi_g values aligned with a FiniteSubgroupData element list."""

    values: tuple
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.dim < 1:
            raise ValueError("Lie algebra dimension must be positive")
        for v in self.values:
            bound_ok = (
                abs(v) <= self.dim
                if _is_rational(v)
                else abs(sympy.N(_to_sympy(v), 30)) <= self.dim + sympy.Rational(1, 10**9)
            )
            if not bound_ok:
                raise ValueError(f"character value {v} exceeds the dimension bound {self.dim}")


@dataclass(frozen=True)
class IndexInput:
    p1_integral: Fraction
    group: FiniteSubgroupData
    character: AdjointCharacter

    def __post_init__(self):
        if len(self.character.values) != len(self.group.elements):
            raise ValueError("character and group element lists disagree in length")


def l2_index(data: IndexInput, trace_convention: str = "fundamental") -> ExactValue:
    """Evaluate the index character sum exactly.

    Returns a Fraction when every input is rational, otherwise an exact
    sympy number.  Warns if the value is not an integer.
    """
    if trace_convention not in ("fundamental", "adjoint"):
        raise ValueError(f"unknown trace convention {trace_convention!r}")
    terms = []
    all_rational = _is_rational(data.p1_integral) or isinstance(data.p1_integral, Fraction)
    for element, chi in zip(data.group.elements, data.character.values):
        trace = element.trace if trace_convention == "fundamental" else chi
        if _is_rational(trace):
            if trace == 2:
                raise ValueError("2 - tr g vanishes for some listed element")
        elif sympy.simplify(_to_sympy(trace) - 2) == 0:
            raise ValueError("2 - tr g vanishes for some listed element")
        all_rational = all_rational and _is_rational(trace) and _is_rational(chi)
        terms.append((chi, trace, element.multiplicity))
    if all_rational:
        acc = Fraction(0)
        for chi, trace, mult in terms:
            acc += Fraction(mult) * (Fraction(chi) - data.character.dim) / (2 - Fraction(trace))
        result: ExactValue = -2 * Fraction(data.p1_integral) + Fraction(2, data.group.order) * acc
        integral = result.denominator == 1
        if integral:
            result = Fraction(result)
    else:
        acc = sympy.Integer(0)
        for chi, trace, mult in terms:
            acc += mult * (_to_sympy(chi) - data.character.dim) / (2 - _to_sympy(trace))
        result = sympy.simplify(
            -2 * _to_sympy(data.p1_integral) + sympy.Rational(2, data.group.order) * acc
        )
        integral = result.is_integer is True
    if not integral:
        warnings.warn(
            f"index evaluated to the non-integer {result}; "
            "an elliptic index must be integral, check the input data",
            stacklevel=2,
        )
    return result


def rational_cos_2pi(m: int, k: int) -> Fraction | None:
    """2 cos(2 pi m / k) as a Fraction when it is rational, else None."""
    if (24 * m) % k != 0:
        return None  # angle not a multiple of pi/12: irrational by Niven
    # reduce 24m/k into 0..12 twenty-fourths of a turn (cos is even and periodic)
    r = (24 * m // k) % 24
    if r > 12:
        r = 24 - r
    values = {0: Fraction(2), 4: Fraction(1), 6: Fraction(0), 8: Fraction(-1), 12: Fraction(-2)}
    return values.get(r)


def cyclic_group_data(k: int) -> FiniteSubgroupData:
    """Z_k inside SU(2): k-1 non-identity elements with traces 2cos(2 pi m/k)."""
    if k < 2:
        raise ValueError("cyclic group order must be at least 2")
    elements = []
    for m in range(1, k):
        trace = rational_cos_2pi(m, k)
        if trace is None:
            trace = 2 * sympy.cos(2 * sympy.pi * m / k)
        elements.append(GroupElementDatum(trace))
    return FiniteSubgroupData(order=k, elements=tuple(elements))


def gocho_index_input() -> IndexInput:
    """The reducible U(1) instanton data: p1 = 0, Gamma = Z_2, trivial adjoint."""
    return IndexInput(
        p1_integral=Fraction(0),
        group=cyclic_group_data(2),
        character=AdjointCharacter(values=(Fraction(1),), dim=1),
    )


def trivial_so3_index_input(k: int = 2) -> IndexInput:
    """Trivial flat SO(3) data over Z_k: chi = dim = 3 termwise."""
    group = cyclic_group_data(k)
    return IndexInput(
        p1_integral=Fraction(0),
        group=group,
        character=AdjointCharacter(values=(Fraction(3),) * len(group.elements), dim=3),
    )
