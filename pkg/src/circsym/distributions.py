"""Circular density families and exact samplers.

The symmetric bases (von Mises, cardioid, wrapped Cauchy, uniform) are
reflectively symmetric about 0; :class:`SineSkewed` multiplies a shifted
base by ``1 + lam * sin(k * (x - theta))``. :class:`MoebiusSkewed` and
:class:`SkewedMixture` are the additional simulation alternatives.

All pdf methods accept scalars or arrays and are exact formulas; all
samplers draw from a ``numpy.random.Generator`` and return angles wrapped
to [-pi, pi).
"""

import math
from dataclasses import dataclass

import numpy as np

from .angles import TWO_PI, wrap
from .errors import UnsupportedBaseError
from .special import bessel_i

_NEWTON_TOL = 1e-13
_NEWTON_MAX_ITER = 64
_BISECT_ITER = 80


def _scalar_or_array(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def _check_count(n):
    if n < 1 or int(n) != n:
        raise ValueError(f"sample size must be a positive integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class Uniform:
    """Circular uniform density 1/(2*pi)."""

    in_family = True
    unimodal = False

    @property
    def label(self):
        return "uniform"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar_or_array(np.full_like(x, 1.0 / TWO_PI))

    def score(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar_or_array(np.zeros_like(x))

    def sample(self, rng, n):
        n = _check_count(n)
        return rng.random(n) * TWO_PI - np.pi


@dataclass(frozen=True)
class VonMises:
    """Von Mises density exp(kappa*cos(x)) / (2*pi*I0(kappa))."""

    kappa: float

    in_family = True
    unimodal = True

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")

    @property
    def label(self):
        return f"vm:{self.kappa:g}"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        norm = TWO_PI * bessel_i(0, self.kappa)
        return _scalar_or_array(np.exp(self.kappa * np.cos(x)) / norm)

    def score(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar_or_array(self.kappa * np.sin(x))

    def sample(self, rng, n):
        """Best-Fisher rejection sampler, vectorized in batches."""
        n = _check_count(n)
        kappa = self.kappa
        if kappa < 1e-9:
            return rng.random(n) * TWO_PI - np.pi
        tau = 1.0 + math.sqrt(1.0 + 4.0 * kappa * kappa)
        rho = (tau - math.sqrt(2.0 * tau)) / (2.0 * kappa)
        r = (1.0 + rho * rho) / (2.0 * rho)
        out = np.empty(n)
        filled = 0
        while filled < n:
            todo = n - filled
            batch = max(16, int(todo / 0.6) + 1)
            u1 = rng.random(batch)
            u2 = rng.random(batch)
            u3 = rng.random(batch)
            z = np.cos(np.pi * u1)
            f = (1.0 + r * z) / (r + z)
            c = kappa * (r - f)
            accept = (c * (2.0 - c) - u2) > 0.0
            hard = ~accept
            if np.any(hard):
                with np.errstate(divide="ignore"):
                    accept[hard] = (np.log(c[hard] / u2[hard]) + 1.0 - c[hard]) >= 0.0
            good = f[accept]
            take = min(todo, good.size)
            angles = np.sign(u3[accept][:take] - 0.5) * np.arccos(np.clip(good[:take], -1.0, 1.0))
            out[filled:filled + take] = angles
            filled += take
        return wrap(out)


@dataclass(frozen=True)
class Cardioid:
    """Cardioid density (1 + ell*cos(x)) / (2*pi)."""

    ell: float

    in_family = True
    unimodal = True

    def __post_init__(self):
        if not 0.0 < self.ell < 1.0:
            raise ValueError(f"ell must lie in (0, 1), got {self.ell!r}")

    @property
    def label(self):
        return f"cardioid:{self.ell:g}"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar_or_array((1.0 + self.ell * np.cos(x)) / TWO_PI)

    def score(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar_or_array(self.ell * np.sin(x) / (1.0 + self.ell * np.cos(x)))

    def sample(self, rng, n):
        """Invert F(x) = (x + pi + ell*sin(x)) / (2*pi) by Newton iteration."""
        n = _check_count(n)
        ell = self.ell
        target = rng.random(n) * TWO_PI - np.pi  # solve x + ell*sin(x) = target
        x = target.copy()
        for _ in range(_NEWTON_MAX_ITER):
            g = x + ell * np.sin(x) - target
            if np.all(np.abs(g) < _NEWTON_TOL):
                break
            x -= g / (1.0 + ell * np.cos(x))
        bad = np.abs(x + ell * np.sin(x) - target) >= 1e-10
        if np.any(bad):
            x[bad] = _bisect_increasing(
                lambda v: v + ell * np.sin(v), target[bad], -np.pi, np.pi
            )
        return wrap(x)


def _bisect_increasing(g, target, lo, hi):
    lo = np.full_like(target, lo)
    hi = np.full_like(target, hi)
    for _ in range(_BISECT_ITER):
        mid = 0.5 * (lo + hi)
        below = g(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class WrappedCauchy:
    """Wrapped Cauchy density with concentration rho in (0, 1)."""

    rho: float

    in_family = True
    unimodal = True

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in (0, 1), got {self.rho!r}")

    @property
    def label(self):
        return f"wcauchy:{self.rho:g}"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        rho = self.rho
        return _scalar_or_array(
            (1.0 - rho * rho) / (TWO_PI * (1.0 + rho * rho - 2.0 * rho * np.cos(x)))
        )

    def score(self, x):
        # -d/dx log pdf = -2*rho*sin(x) / (1 + rho^2 - 2*rho*cos(x)), negated
        x = np.asarray(x, dtype=float)
        rho = self.rho
        return _scalar_or_array(
            2.0 * rho * np.sin(x) / (1.0 + rho * rho - 2.0 * rho * np.cos(x))
        )

    def sample(self, rng, n):
        """Wrap a linear Cauchy draw with scale -log(rho); exact."""
        n = _check_count(n)
        scale = -math.log(self.rho)
        u = rng.random(n)
        return wrap(scale * np.tan(np.pi * (u - 0.5)))


@dataclass(frozen=True)
class VonMisesMixture:
    """Equal-weight mixture of VM(kappa) at -pi/4 and +pi/4.

    Symmetric about 0 but bimodal, so it sits outside the unimodal base
    class; Fisher-matrix operations reject it.
    """

    kappa: float

    in_family = False
    unimodal = False

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")

    @property
    def label(self):
        return f"vmmix:{self.kappa:g}"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        comp = VonMises(self.kappa)
        return _scalar_or_array(
            0.5 * (comp.pdf(x + np.pi / 4) + comp.pdf(x - np.pi / 4))
        )

    def score(self, x):
        raise UnsupportedBaseError(
            "the bimodal von Mises mixture lies outside the unimodal symmetric "
            "class; location scores are undefined for it"
        )

    def sample(self, rng, n):
        n = _check_count(n)
        centers = np.where(rng.random(n) < 0.5, -np.pi / 4, np.pi / 4)
        return wrap(centers + VonMises(self.kappa).sample(rng, n))


BASE_FAMILIES = (Uniform, VonMises, Cardioid, WrappedCauchy, VonMisesMixture)

_BASE_PREFIXES = {
    "vm": VonMises,
    "cardioid": Cardioid,
    "wcauchy": WrappedCauchy,
    "vmmix": VonMisesMixture,
}


def parse_base(label):
    """Base density from its label, the inverse of the ``label`` property.

    Accepted forms: ``uniform``, ``vm:<kappa>``, ``cardioid:<ell>``,
    ``wcauchy:<rho>``, ``vmmix:<kappa>``.
    """
    text = str(label).strip()
    if text == "uniform":
        return Uniform()
    prefix, sep, value = text.partition(":")
    family = _BASE_PREFIXES.get(prefix)
    if not sep or family is None:
        raise ValueError(
            f"unknown base density {label!r}; expected uniform, vm:<kappa>, "
            "cardioid:<ell>, wcauchy:<rho> or vmmix:<kappa>"
        )
    try:
        parameter = float(value)
    except ValueError:
        raise ValueError(f"bad parameter in base density {label!r}") from None
    return family(parameter)


@dataclass(frozen=True)
class SineSkewed:
    """Sine-skewed perturbation base(x - theta) * (1 + lam*sin(k*(x - theta)))."""

    base: object
    lam: float
    k: int = 1
    theta: float = 0.0

    def __post_init__(self):
        if not -1.0 < self.lam < 1.0:
            raise ValueError(f"skewness lam must lie in (-1, 1), got {self.lam!r}")
        if self.k < 1 or int(self.k) != self.k:
            raise ValueError(f"frequency k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "theta", wrap(float(self.theta)))

    @property
    def label(self):
        return f"sineskew({self.base.label},k={self.k},lam={self.lam:g},theta={self.theta:g})"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        u = x - self.theta
        return _scalar_or_array(self.base.pdf(u) * (1.0 + self.lam * np.sin(self.k * u)))

    def sample(self, rng, n):
        """Exact reflection sampler: keep a base draw y with probability
        (1 + lam*sin(k*y))/2, otherwise emit -y; symmetry of the base makes
        the output density exactly the sine-skewed one."""
        n = _check_count(n)
        y = self.base.sample(rng, n)
        u = rng.random(n)
        keep = u <= 0.5 * (1.0 + self.lam * np.sin(self.k * y))
        return wrap(self.theta + np.where(keep, y, -y))


@dataclass(frozen=True)
class MoebiusSkewed:
    """Moebius-transformed base: x -> lam + 2*atan(omega*tan((x - lam)/2)).

    omega = (1 - r)/(1 + r); r in (0, 1). lam = 0 preserves symmetry
    about 0.
    """

    base: object
    lam: float
    r: float

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ValueError(f"r must lie in (0, 1), got {self.r!r}")

    @property
    def omega(self):
        return (1.0 - self.r) / (1.0 + self.r)

    @property
    def label(self):
        return f"moebius({self.base.label},r={self.r:g},lam={self.lam:g})"

    def pdf(self, x):
        # change of variables through the inverse transform
        x = np.asarray(x, dtype=float)
        omega = self.omega
        u = 0.5 * (x - self.lam)
        inverse = self.lam + 2.0 * np.arctan(np.tan(u) / omega)
        jacobian = omega / (omega**2 * np.cos(u) ** 2 + np.sin(u) ** 2)
        return _scalar_or_array(self.base.pdf(wrap(inverse)) * jacobian)

    def sample(self, rng, n):
        n = _check_count(n)
        x = self.base.sample(rng, n)
        y = self.lam + 2.0 * np.arctan(self.omega * np.tan(0.5 * (x - self.lam)))
        return wrap(y)


@dataclass(frozen=True)
class SkewedMixture:
    """VM(kappa) mixture with centers -pi/4 and pi/4 + lam, weights 1/2.

    lam = 0 recovers the symmetric bimodal mixture; lam shifts only the
    second center.
    """

    kappa: float
    lam: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")

    @property
    def label(self):
        return f"mixshift(kappa={self.kappa:g},lam={self.lam:g})"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        comp = VonMises(self.kappa)
        return _scalar_or_array(
            0.5 * (comp.pdf(x + np.pi / 4) + comp.pdf(x - np.pi / 4 - self.lam))
        )

    def sample(self, rng, n):
        n = _check_count(n)
        second = rng.random(n) < 0.5
        centers = np.where(second, np.pi / 4 + self.lam, -np.pi / 4)
        return wrap(centers + VonMises(self.kappa).sample(rng, n))
