"""Count-mixed maxima: the composition F(x) = phi(-log H(x)).

A count-mixed max-stable law pairs a Laplace-transform family (phi and its
count scheme) with a max-stable base H.  The composed d.f. is evaluated
through the exponent function, F(x) = phi(V(x)), which stays accurate in
the tails where H(x) underflows.  The module also provides the quadrature
oracle integral H(x)^t dLambda(t) against the mixer density, exact sampling
of random maxima (the count is drawn first, then that many base draws are
maximized), and the same-type decomposition F = P_theta(F_theta).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError, DomainError
from .evd_core import MaxStableLaw, PoissonMax, standard_points
from .lt_families import Degenerate
from .streams import CHUNK_HEAVY, as_generator, chunked_draws


@dataclass(frozen=True)
class NMaxStableLaw:
    """phi composed with a max-stable (or Poisson-maximum) base law."""

    family: object
    base: object

    def __post_init__(self):
        if not isinstance(self.base, (MaxStableLaw, PoissonMax)):
            raise ConfigurationError(
                f"base must be max-stable or a Poisson maximum, got {type(self.base).__name__}"
            )

    @property
    def dim(self):
        return self.base.dim

    def v(self, x):
        return self.base.v(x)

    def cdf(self, x):
        return self.family.lt(self.base.v(x))


def nmid_cdf(law, x):
    """Evaluate F(x) = phi(V(x)); V = +inf (base CDF 0) maps to 0."""
    return law.cdf(x)


@lru_cache(maxsize=8)
def _half_line_rule(nodes):
    # Gauss-Legendre on [0,1] pushed to (0,inf) through t = u/(1-u).
    u, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * (u + 1.0)
    w = 0.5 * w
    t = u / (1.0 - u)
    weight = w / (1.0 - u) ** 2
    t.setflags(write=False)
    weight.setflags(write=False)
    return t, weight


def mixture_cdf(law, x, nodes=256):
    """Quadrature oracle: integral of H(x)^t against the mixer density.

    Independent of the closed-form composition; must agree with
    ``nmid_cdf`` to high accuracy.  Available for families whose mixer has
    a closed-form density (geometric) or is a point mass (degenerate).
    """
    if nodes < 64:
        raise ConfigurationError(f"at least 64 quadrature nodes required, got {nodes}")
    if isinstance(law.family, Degenerate):
        # the mixer is a point mass at 1, so the mixture is H itself
        return law.base.cdf(x)
    density = law.family.mixer_density  # raises for unsupported mixers
    t, weight = _half_line_rule(nodes)
    coeff = weight * density(t)
    v = np.asarray(law.v(x), dtype=float)
    out = np.exp(-v[..., None] * t) @ coeff
    return float(out) if out.ndim == 0 else out


def sample_random_max(scheme, base, rng, size=None):
    """Componentwise maximum of N_theta independent draws from ``base``.

    The count is drawn first; exactly that many base values are then drawn
    and maximized, so for every theta the sample has d.f. P_theta(G(x)).
    """
    rng = as_generator(rng)
    counts = np.atleast_1d(scheme.sample(rng, size if size is not None else 1))
    offsets = np.concatenate(([0], np.cumsum(counts[:-1])))
    total = int(counts.sum())
    if isinstance(base, tuple):
        u = rng.random((total, len(base)))
        draws = np.column_stack([b.ppf(u[:, i]) for i, b in enumerate(base)])
        out = np.stack([np.maximum.reduceat(draws[:, i], offsets) for i in range(len(base))], axis=-1)
    else:
        draws = base.ppf(rng.random(total))
        out = np.maximum.reduceat(draws, offsets)
    return out[0] if size is None else out


def sample_random_max_seeded(scheme, base, seed, n, threads=1):
    """Chunked, thread-count-independent version of ``sample_random_max``."""
    return chunked_draws(
        seed,
        n,
        lambda rng, m: sample_random_max(scheme, base, rng, m),
        threads=threads,
        chunk=CHUNK_HEAVY,
    )


@dataclass(frozen=True)
class DecompositionReport:
    """Residual and norming of the same-type split F = P_theta(F_theta)."""

    theta: float
    residual: float
    norming: tuple  # per coordinate (scale, shift) with X_theta = scale * X + shift

    @property
    def passed(self):
        return self.residual < 1e-12


def same_type_decompose(law, theta, grid=None):
    """Split F into P_theta(F_theta) with F_theta(x) = phi(theta * V(x)).

    Returns the sup residual |F(x) - P_theta(F_theta(x))| over the grid and
    the per-coordinate norming pair carrying F_theta back to the type of F
    (for a Frechet(alpha) base the scale factor is theta^(1/alpha)).
    """
    law.family.validate_theta(theta)
    if not isinstance(law.base, MaxStableLaw):
        raise ConfigurationError("the same-type decomposition needs a max-stable base")
    pts = standard_points(law.base) if grid is None else np.asarray(grid, dtype=float)
    v = np.atleast_1d(law.base.v(pts))
    if np.any(np.isinf(v)):
        raise DomainError("decomposition grid must lie inside the support of the base law")
    f_full = law.family.lt(v)
    f_theta = law.family.lt(theta * v)
    residual = float(np.abs(f_full - law.family.pgf(theta, f_theta)).max())
    norming = tuple(m.norming(theta) for m in law.base.marginals)
    return DecompositionReport(theta=theta, residual=residual, norming=norming)
