"""Exact Laplacian spectra of boxes (Dirichlet/Neumann) and balls (Dirichlet).

A :class:`Spectrum` lists every eigenvalue up to ``cutoff`` with multiplicity
expanded inline. Enumeration grows the cutoff until enough eigenvalues are
present, so nothing at or below the cutoff can be missing.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .bounds import check_dim
from .exceptions import BudgetExceededError, PreconditionError

__all__ = [
    "DomainSpec",
    "Spectrum",
    "DEFAULT_BUDGET",
    "box",
    "ball",
    "box_spectrum",
    "ball_spectrum",
    "domain_spectrum",
    "spherical_multiplicity",
    "counting_function",
    "counting_integral",
    "partial_sum",
    "riesz_mean_1",
    "write_spectrum_csv",
    "read_spectrum_csv",
]

DEFAULT_BUDGET = 10_000_000
_BOUNDARIES = ("dirichlet", "neumann")


@dataclass(frozen=True)
class DomainSpec:
    kind: str
    dim: int
    boundary: str = "dirichlet"
    sides: tuple = ()
    radius: float = 0.0

    def __post_init__(self):
        if self.kind not in ("box", "ball"):
            raise PreconditionError(f"unknown domain kind {self.kind!r}")
        if self.boundary not in _BOUNDARIES:
            raise PreconditionError(f"boundary must be one of {_BOUNDARIES}, got {self.boundary!r}")
        check_dim(self.dim)
        if self.kind == "box":
            if len(self.sides) != self.dim or not all(s > 0 for s in self.sides):
                raise PreconditionError("box needs `dim` positive side lengths")
        else:
            if not self.radius > 0:
                raise PreconditionError("ball radius must be positive")
            if self.boundary == "neumann":
                raise PreconditionError("Neumann spectra of balls are not supported")

    @property
    def volume(self) -> float:
        if self.kind == "box":
            return float(np.prod(self.sides))
        return specfun.unit_ball_volume(self.dim) * self.radius ** self.dim

    @property
    def label(self) -> str:
        if self.kind == "box":
            shape = "x".join(f"{s:g}" for s in self.sides)
            return f"box[{shape}]/{self.boundary}"
        return f"ball[n={self.dim},r={self.radius:g}]/{self.boundary}"

    def with_boundary(self, boundary: str) -> "DomainSpec":
        return DomainSpec(self.kind, self.dim, boundary, self.sides, self.radius)


def box(*sides: float, boundary: str = "dirichlet") -> DomainSpec:
    sides = tuple(float(s) for s in sides)
    return DomainSpec("box", len(sides), boundary, sides=sides)


def ball(dim: int, radius: float = 1.0) -> DomainSpec:
    return DomainSpec("ball", dim, "dirichlet", radius=float(radius))


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues (multiplicity expanded) complete up to ``cutoff``."""

    eigenvalues: np.ndarray = field(repr=False)
    cutoff: float
    volume: float
    domain: DomainSpec

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)

    def __len__(self):
        return len(self.eigenvalues)

    def __getitem__(self, k):
        """1-based access: ``spec[1]`` is lambda_1."""
        if k < 1 or k > len(self.eigenvalues):
            raise IndexError(f"eigenvalue index {k} outside 1..{len(self.eigenvalues)}")
        return float(self.eigenvalues[k - 1])

    @property
    def dim(self) -> int:
        return self.domain.dim


def _lattice_values(inv_sq, start, level):
    """All pi^2 sum_i (m_i / a_i)^2 <= level with m_i >= start, unsorted."""
    vals = np.zeros(1)
    for w in inv_sq:
        top = int(math.floor(math.sqrt(level / (math.pi ** 2 * w))))
        if top < start:
            return np.empty(0)
        m = np.arange(start, top + 1, dtype=float)
        axis = math.pi ** 2 * w * m * m
        vals = (vals[:, None] + axis[None, :]).ravel()
        vals = vals[vals <= level]
    return vals


def box_spectrum(sides, boundary: str = "dirichlet", count: int = 1, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Eigenvalues pi^2 sum (m_i/a_i)^2 of a box, m_i >= 1 (Dirichlet) or >= 0 (Neumann).

    Returns at least ``count`` eigenvalues; the cutoff is the enumeration
    level, below which the list is complete.
    """
    domain = box(*sides, boundary=boundary)
    if count < 1:
        raise PreconditionError("count must be >= 1")
    if count > budget:
        raise BudgetExceededError(f"count {count} exceeds budget {budget}")
    n = domain.dim
    inv_sq = [1.0 / (a * a) for a in domain.sides]
    start = 1 if boundary == "dirichlet" else 0
    base = math.pi ** 2 * sum(inv_sq) if start else 0.0
    # Weyl guess for the level holding `count` eigenvalues, then grow
    L = specfun.semiclassical_constant(n) * domain.volume
    level = base + (count / L) ** (2.0 / n) + math.pi ** 2 * max(inv_sq)
    while True:
        vals = _lattice_values(inv_sq, start, level)
        if len(vals) > budget:
            raise BudgetExceededError(f"enumeration produced {len(vals)} eigenvalues (budget {budget})")
        if len(vals) >= count:
            break
        level *= 1.25
    vals.sort()
    return Spectrum(vals, float(level), domain.volume, domain)


def spherical_multiplicity(dim: int, l: int) -> int:
    """Dimension of degree-l spherical harmonics on S^{dim-1}."""
    dim = check_dim(dim)
    if l < 0 or int(l) != l:
        raise PreconditionError(f"degree must be a nonnegative integer, got {l!r}")
    l = int(l)
    first = math.comb(dim + l - 1, l)
    second = math.comb(dim + l - 3, l - 2) if l >= 2 else 0
    return first - second


def ball_spectrum(dim: int, radius: float = 1.0, count: int = 1, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Dirichlet eigenvalues j_{dim/2-1+l, p}^2 / radius^2 with multiplicity.

    The zero level X is grown until at least ``count`` eigenvalues lie below
    X^2. Channels stop at the first l whose first zero exceeds X, which is
    complete because j_{nu,1} increases with nu.
    """
    domain = ball(dim, radius)
    if count < 1:
        raise PreconditionError("count must be >= 1")
    if count > budget:
        raise BudgetExceededError(f"count {count} exceeds budget {budget}")
    n = domain.dim
    nu0 = 0.5 * n - 1.0
    weyl = specfun.semiclassical_constant(n) * specfun.unit_ball_volume(n)
    level = max(specfun.bessel_zero(nu0, 1) + 1.0, (count / weyl) ** (1.0 / n) * 1.1)
    zero_cache = {}
    while True:
        vals = []
        total = 0
        l = 0
        while True:
            nu = nu0 + l
            if nu >= level:
                break
            zs = _zeros_below(zero_cache, nu, level)
            if not zs:
                break
            mult = spherical_multiplicity(n, l)
            for z in zs:
                vals.extend([z * z] * mult)
            total += mult * len(zs)
            if total > budget:
                raise BudgetExceededError(f"ball enumeration exceeded budget {budget}")
            l += 1
        if total >= count:
            break
        level *= 1.2
    arr = np.sort(np.array(vals)) / radius ** 2
    return Spectrum(arr, level * level / radius ** 2, domain.volume, domain)


def _zeros_below(cache, nu, level):
    # extend cached zero lists rather than recomputing them on each growth step
    zs = cache.get(nu)
    if zs is None:
        zs = cache[nu] = specfun.bessel_zeros_below(nu, level)
        cache[(nu, "level")] = level
        return zs
    if cache[(nu, "level")] < level:
        zs = cache[nu] = specfun.bessel_zeros_below(nu, level)
        cache[(nu, "level")] = level
    return [z for z in zs if z <= level]


def domain_spectrum(domain: DomainSpec, count: int, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Dispatch on the domain kind."""
    if domain.kind == "box":
        return box_spectrum(domain.sides, domain.boundary, count, budget)
    return ball_spectrum(domain.dim, domain.radius, count, budget)


def _check_level(spec, lam):
    if lam > spec.cutoff:
        raise PreconditionError(f"lam = {lam!r} exceeds the completeness cutoff {spec.cutoff!r}")


def counting_function(spec: Spectrum, lam: float) -> int:
    """N(lam): number of eigenvalues <= lam, counting multiplicity."""
    _check_level(spec, lam)
    return int(np.searchsorted(spec.eigenvalues, lam, side="right"))


def counting_integral(spec: Spectrum, lam: float) -> float:
    """int_0^lam N(mu) dmu by exact quadrature of the step function."""
    _check_level(spec, lam)
    below = spec.eigenvalues[spec.eigenvalues <= lam]
    if len(below) == 0:
        return 0.0
    right = np.append(below[1:], lam)
    counts = np.arange(1, len(below) + 1, dtype=float)
    return float(math.fsum(counts * (right - below)))


def partial_sum(spec: Spectrum, k: int) -> float:
    """Sum of the k smallest eigenvalues."""
    if int(k) != k or k < 1:
        raise PreconditionError(f"k must be a positive integer, got {k!r}")
    if k > len(spec.eigenvalues):
        raise PreconditionError(f"spectrum holds only {len(spec.eigenvalues)} eigenvalues, need {k}")
    return float(math.fsum(spec.eigenvalues[: int(k)]))


def riesz_mean_1(spec: Spectrum, lam: float) -> float:
    """Riesz mean sum_j (lam - lambda_j)_+ ; checked against the step integral."""
    _check_level(spec, lam)
    below = spec.eigenvalues[spec.eigenvalues < lam]
    value = float(math.fsum(lam - below))
    step = counting_integral(spec, lam)
    assert abs(value - step) <= 1e-10 * max(1.0, abs(value)), (value, step)
    return value


def write_spectrum_csv(spec: Spectrum, path) -> None:
    """Write one ``eigenvalue`` column preceded by a ``#`` metadata line."""
    with open(path, "w", newline="") as fh:
        fh.write(
            f"# domain={spec.domain.label}, boundary={spec.domain.boundary}, "
            f"cutoff={spec.cutoff:.12g}, volume={spec.volume:.12g}\n"
        )
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["eigenvalue"])
        for v in spec.eigenvalues:
            writer.writerow([f"{v:.12g}"])


def read_spectrum_csv(path) -> tuple[dict, np.ndarray]:
    """Read a file written by :func:`write_spectrum_csv`; returns (metadata, values)."""
    with open(path, newline="") as fh:
        header = fh.readline().lstrip("#").strip()
        meta = dict(part.strip().split("=", 1) for part in header.split(", "))
        reader = csv.reader(fh)
        cols = next(reader)
        if cols != ["eigenvalue"]:
            raise PreconditionError(f"unexpected columns {cols!r}")
        values = np.array([float(row[0]) for row in reader if row])
    return meta, values
