"""Model definitions for the four relativistic oscillator families.

Each family is defined by a linear superpotential profile (harmonic) or a
linear-plus-inverse profile (isotonic), in one dimension on the full line or
as the radial part of a two-dimensional problem. Squaring the first-order
Dirac pair yields an effective Sturm-Liouville problem

    -u'' + V(x) u = lambda u

whose eigenvalue maps affinely to the squared relativistic energy E^2. The
two-dimensional families are reduced to the flat-measure radial form (the
sqrt(r) substitution), so every family lands on the same tridiagonal
discretization. All formulas take hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

__all__ = [
    "Family",
    "PhysicalParams",
    "ModelSpec",
    "AffineMap",
    "RadialProblem",
    "superpotential_1d",
    "superpotential_2d",
    "pair_superpotential",
    "effective_problem",
    "pair_recover_psi2",
]


class Family(str, Enum):
    """The four supported oscillator families, keyed by their CLI labels."""

    HARMONIC_1D = "1d-ho"
    ISOTONIC_1D = "1d-iso"
    HARMONIC_2D = "2d-ho"
    ISOTONIC_2D = "2d-iso"

    @property
    def is_two_dimensional(self) -> bool:
        return self in (Family.HARMONIC_2D, Family.ISOTONIC_2D)

    @property
    def is_isotonic(self) -> bool:
        return self in (Family.ISOTONIC_1D, Family.ISOTONIC_2D)

    @classmethod
    def from_label(cls, label: str) -> "Family":
        try:
            return cls(label)
        except ValueError:
            valid = ", ".join(f.value for f in cls)
            raise ValueError(f"unknown family {label!r}; expected one of: {valid}") from None


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, light speed, and well-strength parameters (hbar = 1).

    omega is the harmonic frequency (harmonic families); a and b are the
    linear and inverse strengths of the isotonic profile (isotonic families).
    Unused parameters may stay at their defaults.
    """

    m: float = 1.0
    c: float = 1.0
    omega: float = 1.0
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (self.m > 0):
            raise ValueError(f"mass must be positive, got m={self.m}")
        if not (self.c > 0):
            raise ValueError(f"light speed must be positive, got c={self.c}")


@dataclass(frozen=True)
class ModelSpec:
    """A fully validated model: family, parameters, and angular sector.

    ml is the integer angular momentum index, required for the 2D families
    and forbidden for the 1D ones. Validation rejects sub-critical
    centrifugal sectors (ml^2 < 1/4, or (ml - b)^2 < 1/4 for the 2D
    isotonic family) where the radial problem loses its unique ground
    branch; those sectors are out of the solver's contract.
    """

    family: Family
    params: PhysicalParams = field(default_factory=PhysicalParams)
    ml: Optional[int] = None

    def __post_init__(self):
        fam, p = self.family, self.params
        if fam.is_two_dimensional:
            if self.ml is None:
                raise ValueError(f"family {fam.value} requires an angular index ml")
            if self.ml != int(self.ml):
                raise ValueError(f"ml must be an integer, got {self.ml}")
            object.__setattr__(self, "ml", int(self.ml))
        elif self.ml is not None:
            raise ValueError(f"family {fam.value} is one-dimensional; ml does not apply")
        if fam.is_isotonic:
            if not (p.a > 0):
                raise ValueError(f"isotonic strength a must be positive, got a={p.a}")
        else:
            if not (p.omega > 0):
                raise ValueError(f"harmonic frequency must be positive, got omega={p.omega}")
        if fam is Family.ISOTONIC_1D and not (p.b > 0):
            raise ValueError(f"1D isotonic inverse strength must be positive, got b={p.b}")
        if fam is Family.HARMONIC_2D and self.ml ** 2 < 0.25:
            raise ValueError(
                f"2D harmonic sector ml={self.ml} is sub-critical (ml^2 < 1/4); not supported"
            )
        if fam is Family.ISOTONIC_2D and (self.ml - p.b) ** 2 < 0.25:
            raise ValueError(
                f"2D isotonic sector ml={self.ml}, b={p.b} is sub-critical "
                f"((ml - b)^2 < 1/4); not supported"
            )

    @property
    def mc2(self) -> float:
        """Rest energy m*c^2."""
        return self.params.m * self.params.c ** 2

    @property
    def well_strength(self) -> float:
        """Coefficient s of the dominant s^2 x^2 tail of the effective potential."""
        p = self.params
        return p.a if self.family.is_isotonic else p.m * p.omega


@dataclass(frozen=True)
class AffineMap:
    """y = slope * x + intercept."""

    slope: float
    intercept: float

    def __call__(self, x):
        return self.slope * np.asarray(x, dtype=float) + self.intercept


@dataclass(frozen=True)
class RadialProblem:
    """Effective flat-measure Sturm-Liouville problem -u'' + V u = lambda u.

    lambda_to_e2 carries the eigenvalue to the squared relativistic energy
    (slope exactly c^2); lambda_to_eps carries it to the leading-order
    non-relativistic energy via E^2 - (mc^2)^2 = 2 mc^2 eps. lambda_estimate
    gives the closed-form eigenvalue ladder, used for domain sizing.
    """

    domain: str  # "full-line" or "half-line"
    potential: Callable[[np.ndarray], np.ndarray]
    lambda_to_e2: AffineMap
    lambda_to_eps: AffineMap
    singular_at_zero: bool
    well_strength: float
    lambda_gap: float
    lambda_offset: float

    def lambda_estimate(self, n: int) -> float:
        """Closed-form eigenvalue ladder value lambda_n = gap*n + offset."""
        return self.lambda_gap * n + self.lambda_offset


def superpotential_1d(spec: ModelSpec, x):
    """Superpotential W(x) for the 1D families.

    Harmonic: W = m omega x on the full line. Isotonic: W = a x + b / x on
    the half line (x <= 0 is a domain error there).
    """
    if spec.family.is_two_dimensional:
        raise ValueError(f"superpotential_1d applies to 1D families, not {spec.family.value}")
    p = spec.params
    x = np.asarray(x, dtype=float)
    if spec.family is Family.HARMONIC_1D:
        w = p.m * p.omega * x
        return w[()] if w.ndim == 0 else w
    if np.any(x <= 0):
        raise ValueError("1D isotonic superpotential is defined on x > 0 only")
    w = p.a * x + p.b / x
    return w[()] if w.ndim == 0 else w


def superpotential_2d(spec: ModelSpec, r):
    """Radial superpotential profile w(r) for the 2D families.

    Harmonic: w = m omega r. Isotonic: w = a r + b / r. Defined on r > 0.
    """
    if not spec.family.is_two_dimensional:
        raise ValueError(f"superpotential_2d applies to 2D families, not {spec.family.value}")
    p = spec.params
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radial superpotential is defined on r > 0 only")
    if spec.family is Family.HARMONIC_2D:
        w = p.m * p.omega * r
    else:
        w = p.a * r + p.b / r
    return w[()] if w.ndim == 0 else w


def pair_superpotential(spec: ModelSpec, x):
    """Effective first-order coupling function for the spinor pair.

    In 1D this is W(x) itself. In 2D, acting on the flat-measure radial
    function and passing from the angular sector ml to ml + 1, the
    first-order operator is d/dr + w(r) - (ml + 1/2)/r; this returns that
    shifted profile.
    """
    if spec.family.is_two_dimensional:
        r = np.asarray(x, dtype=float)
        return superpotential_2d(spec, r) - (spec.ml + 0.5) / r
    return superpotential_1d(spec, x)


def _problem_pieces(spec: ModelSpec):
    """Potential, lambda ladder, and E^2 intercept for each family."""
    p = spec.params
    mc2 = spec.mc2
    c2 = p.c ** 2
    fam = spec.family
    if fam is Family.HARMONIC_1D:
        mw = p.m * p.omega

        def potential(x):
            return (mw * x) ** 2

        # lambda_n = m omega (2n + 1); E^2 = c^2 lambda + (mc^2)^2 - m omega c^2
        return potential, "full-line", False, 2.0 * mw, mw, mc2 ** 2 - mw * c2
    if fam is Family.ISOTONIC_1D:
        a, b = p.a, p.b
        cent = b * (b + 1.0)

        def potential(x):
            return (a * x) ** 2 + cent / x ** 2

        # lambda_n = a (4n + 2b + 3); E^2 = c^2 lambda + (mc^2)^2 - a c^2 (1 - 2b)
        return potential, "half-line", True, 4.0 * a, a * (2.0 * b + 3.0), mc2 ** 2 - a * c2 * (1.0 - 2.0 * b)
    if fam is Family.HARMONIC_2D:
        mw = p.m * p.omega
        ml = spec.ml
        cent = ml ** 2 - 0.25

        def potential(r):
            return (mw * r) ** 2 + cent / r ** 2

        # lambda_n = m omega (4n + 2|ml| + 2); E^2 = c^2 lambda + (mc^2)^2 - 2 mc^2 omega (1 + ml)
        return potential, "half-line", True, 4.0 * mw, mw * (2.0 * abs(ml) + 2.0), mc2 ** 2 - 2.0 * mc2 * p.omega * (1.0 + ml)
    a, b, ml = p.a, p.b, spec.ml
    s = abs(ml - b)
    cent = (ml - b) ** 2 - 0.25

    def potential(r):
        return (a * r) ** 2 + cent / r ** 2

    # lambda_n = a (4n + 2|ml - b| + 2); E^2 = c^2 lambda + (mc^2)^2 - 2 a c^2 (ml - b + 1)
    return potential, "half-line", True, 4.0 * a, a * (2.0 * s + 2.0), mc2 ** 2 - 2.0 * a * c2 * (ml - b + 1.0)


def effective_problem(spec: ModelSpec) -> RadialProblem:
    """Build the effective Sturm-Liouville problem for a model.

    The potential is V = W^2 - W' plus the constant absorbed into the
    eigenvalue map (2D families also pick up the -1/(4r^2) flat-measure
    term), so lambda_to_e2 has slope exactly c^2 for every family.
    """
    potential, domain, singular, gap, offset, e2_intercept = _problem_pieces(spec)
    c2 = spec.params.c ** 2
    mc2 = spec.mc2
    eps_slope = c2 / (2.0 * mc2)
    eps_intercept = (e2_intercept - mc2 ** 2) / (2.0 * mc2)
    return RadialProblem(
        domain=domain,
        potential=potential,
        lambda_to_e2=AffineMap(c2, e2_intercept),
        lambda_to_eps=AffineMap(eps_slope, eps_intercept),
        singular_at_zero=singular,
        well_strength=spec.well_strength,
        lambda_gap=gap,
        lambda_offset=offset,
    )


def pair_recover_psi2(spec: ModelSpec, energy: float, x: np.ndarray, psi1: np.ndarray) -> np.ndarray:
    """Recover the lower spinor component from the upper one.

    Applies the first-order pair relation psi2 = c (d/dx + W_eff) psi1 / (E + mc^2)
    with the derivative taken by central differences on the uniform grid x.
    The returned profile is real: it is the lower component in the gauge
    where the block Hamiltonian is real symmetric (the physical component
    is -1j times this array). For 2D families psi1 must be the flat-measure
    radial function; the result lives in the angular sector ml + 1.
    """
    x = np.asarray(x, dtype=float)
    psi1 = np.asarray(psi1, dtype=float)
    if x.shape != psi1.shape or x.ndim != 1 or x.size < 3:
        raise ValueError("pair_recover_psi2 expects matching 1D arrays with at least 3 samples")
    mc2 = spec.mc2
    if abs(energy + mc2) < 1e-12 * mc2:
        raise ValueError(f"pair relation degenerates at E = -mc^2 (E={energy})")
    h = x[1] - x[0]
    # Second-order one-sided stencils at the ends: the default first-order
    # ones leave an O(h) edge error that the 1/x part of the superpotential
    # amplifies to O(1) at the node nearest the origin.
    dpsi = np.gradient(psi1, h, edge_order=2)
    w = pair_superpotential(spec, x)
    return spec.params.c * (dpsi + w * psi1) / (energy + mc2)
