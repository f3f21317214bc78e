"""Riemannian and Weyl-integrable geometry evaluated by finite differences.

A metric is any object exposing the ``MetricField`` interface. Curvature
quantities are assembled from nested central differences of the metric
components; a Weyl structure adds a positive gauge field chi(q) whose
logarithmic gradient is the Weyl covector, and the Weyl scalar curvature is
provided in two algebraically equivalent but independently coded forms so
their agreement is a meaningful check.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .fd import central_diff, derivative_stack, gradient

# ---------------------------------------------------------------------------
# metric fields
# ---------------------------------------------------------------------------


class MetricField:
    """Base class for metric fields g_ij(q).

    Subclasses set ``dim``, ``constant_dims`` (coordinate indices the
    components provably do not depend on, exploited to skip finite
    differences) and implement ``matrix``. ``inverse`` and ``sqrt_det``
    have generic fallbacks.
    """

    dim: int = 0
    constant_dims: frozenset[int] = frozenset()

    def matrix(self, q: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inverse(self, q: np.ndarray) -> np.ndarray:
        return np.linalg.inv(self.matrix(q))

    def sqrt_det(self, q: np.ndarray) -> float:
        return float(np.sqrt(abs(np.linalg.det(self.matrix(q)))))


class ConstantMetric(MetricField):
    """Metric with the same components everywhere (flat fixture)."""

    def __init__(self, matrix: np.ndarray):
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("metric matrix must be square")
        self._m = m
        self._inv = np.linalg.inv(m)
        self._sd = float(np.sqrt(abs(np.linalg.det(m))))
        self.dim = m.shape[0]
        self.constant_dims = frozenset(range(self.dim))

    def matrix(self, q):
        return self._m

    def inverse(self, q):
        return self._inv

    def sqrt_det(self, q):
        return self._sd


class SphereMetric(MetricField):
    """Round 2-sphere of radius r in polar coordinates q = (colatitude, azimuth)."""

    dim = 2
    constant_dims = frozenset({1})

    def __init__(self, radius: float = 1.0):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.radius = float(radius)

    def matrix(self, q):
        r2 = self.radius ** 2
        return np.diag([r2, r2 * np.sin(q[0]) ** 2])


class ScaledMetric(MetricField):
    """Pointwise conformal scaling rho(q) * g_ij(q) of a base metric."""

    def __init__(self, base: MetricField, rho: Callable[[np.ndarray], float],
                 constant_dims: frozenset[int] | None = None):
        self.base = base
        self.rho = rho
        self.dim = base.dim
        if constant_dims is None:
            self.constant_dims = frozenset()
        else:
            self.constant_dims = frozenset(constant_dims) & base.constant_dims

    def matrix(self, q):
        return self.rho(q) * self.base.matrix(q)

    def inverse(self, q):
        return self.base.inverse(q) / self.rho(q)

    def sqrt_det(self, q):
        return self.base.sqrt_det(q) * self.rho(q) ** (self.dim / 2.0)


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def christoffel_at(metric: MetricField, point: np.ndarray, h: float = 1e-3,
                   order: int = 4) -> np.ndarray:
    """Christoffel symbols Gamma^i_{jk} of the metric at one point.

    Components are assembled from central differences of the metric matrix;
    axes in ``metric.constant_dims`` contribute exact zero derivatives.
    """
    point = np.asarray(point, dtype=float)
    dg = derivative_stack(metric.matrix, point, h=h, order=order,
                          skip=metric.constant_dims)  # dg[l, i, j] = d_l g_ij
    ginv = metric.inverse(point)
    term = np.einsum("jlk->ljk", dg) + np.einsum("klj->ljk", dg) - dg
    return 0.5 * np.einsum("il,ljk->ijk", ginv, term)


def riemann_scalar_at(metric: MetricField, point: np.ndarray, h: float = 1e-2,
                      order: int = 4, h_inner: float | None = None) -> float:
    """Riemann scalar curvature R at one point by nested finite differences.

    ``h`` steps the outer derivatives of the Christoffel symbols, ``h_inner``
    (default h/10) the metric derivatives inside each Christoffel evaluation.
    """
    point = np.asarray(point, dtype=float)
    if h_inner is None:
        h_inner = h / 10.0
    gam = christoffel_at(metric, point, h=h_inner, order=order)
    dgam = derivative_stack(
        lambda q: christoffel_at(metric, q, h=h_inner, order=order),
        point, h=h, order=order, skip=metric.constant_dims)
    ginv = metric.inverse(point)
    t1 = np.einsum("iijk->jk", dgam)
    t2 = np.einsum("jiik->jk", dgam)
    t3 = np.einsum("iip,pjk->jk", gam, gam)
    t4 = np.einsum("ijp,pik->jk", gam, gam)
    return float(np.einsum("jk,jk->", ginv, t1 - t2 + t3 - t4))


def covariant_divergence_at(metric: MetricField, vector: Callable[[np.ndarray], np.ndarray],
                            point: np.ndarray, h: float = 1e-3, order: int = 4) -> float:
    """Covariant divergence of a contravariant vector field V^k(q).

    Uses the density form (1/sqrt g) d_k (sqrt g V^k), which needs no
    Christoffel symbols.
    """
    point = np.asarray(point, dtype=float)
    total = 0.0
    for k in range(metric.dim):
        total += central_diff(
            lambda q: metric.sqrt_det(q) * np.asarray(vector(q))[k],
            point, axis=k, h=h, order=order)
    return float(total / metric.sqrt_det(point))


# ---------------------------------------------------------------------------
# Weyl structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylGauge:
    """Positive gauge field chi(q) of a Weyl-integrable structure.

    Keeping log(chi) as a first-class callable avoids a lossy exp/log round
    trip when the gauge is built from a log-space field.
    """

    chi: Callable[[np.ndarray], float]
    log_chi: Callable[[np.ndarray], float] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.log_chi is None:
            chi = self.chi
            object.__setattr__(self, "log_chi", lambda q: float(np.log(chi(q))))

    @classmethod
    def from_log(cls, log_chi: Callable[[np.ndarray], float]) -> "WeylGauge":
        return cls(chi=lambda q: float(np.exp(log_chi(q))), log_chi=log_chi)

    @classmethod
    def unit(cls) -> "WeylGauge":
        return cls(chi=lambda q: 1.0, log_chi=lambda q: 0.0)

    def covector(self, q: np.ndarray, h: float = 1e-3, order: int = 4) -> np.ndarray:
        """Weyl covector phi_i = d_i log chi at a point."""
        return gradient(self.log_chi, np.asarray(q, dtype=float), h=h, order=order)


def weyl_scalar_at(metric: MetricField, gauge: WeylGauge, point: np.ndarray,
                   n: int | None = None, h: float = 1e-3, order: int = 4,
                   form: str = "phi", r_scalar: float | None = None,
                   curvature_h: float = 1e-2) -> float:
    """Weyl scalar curvature of (metric, gauge) at one point.

    Two independently coded forms of the same scalar:

    * ``form="phi"``:  R + 2(n-1) div(phi#) - (n-1)(n-2) phi.phi,
      with phi_i = d_i log chi raised by the inverse metric.
    * ``form="chi"``:  R + 2(n-1) (lap chi)/chi - n(n-1) |grad chi|^2/chi^2.

    ``r_scalar`` short-circuits the Riemann scalar when it is known in
    closed form (it enters both forms additively).
    """
    point = np.asarray(point, dtype=float)
    if n is None:
        n = metric.dim
    elif n != metric.dim:
        raise ValueError(f"n = {n} does not match metric dimension {metric.dim}")
    r = riemann_scalar_at(metric, point, h=curvature_h, order=order) \
        if r_scalar is None else float(r_scalar)

    if form == "phi":
        def phi_up(q):
            return metric.inverse(q) @ gauge.covector(q, h=h, order=order)

        div_phi = covariant_divergence_at(metric, phi_up, point, h=h, order=order)
        phi = gauge.covector(point, h=h, order=order)
        phi_sq = float(phi @ metric.inverse(point) @ phi)
        return r + 2.0 * (n - 1) * div_phi - (n - 1) * (n - 2) * phi_sq

    if form == "chi":
        def grad_chi_up(q):
            return metric.inverse(q) @ gradient(gauge.chi, q, h=h, order=order)

        chi0 = gauge.chi(point)
        lap_chi = covariant_divergence_at(metric, grad_chi_up, point, h=h, order=order)
        dchi = gradient(gauge.chi, point, h=h, order=order)
        grad_sq = float(dchi @ metric.inverse(point) @ dchi)
        return r + 2.0 * (n - 1) * lap_chi / chi0 - n * (n - 1) * grad_sq / chi0 ** 2

    raise ValueError(f"unknown form {form!r}; use 'phi' or 'chi'")


def conformal_transform(metric: MetricField, gauge: WeylGauge,
                        rho: Callable[[np.ndarray], float],
                        log_rho: Callable[[np.ndarray], float] | None = None
                        ) -> tuple[ScaledMetric, WeylGauge]:
    """Conformal gauge change (g, chi) -> (rho g, chi sqrt(rho)).

    This is the unique gauge shift under which the Weyl scalar transforms
    with weight -1 (rho * R_W(transformed) = R_W(original)) and under which
    the unit gauge rho = chi^(-2) drives chi to 1, reducing the Weyl scalar
    to the Riemann scalar of the rescaled metric.
    """
    if log_rho is None:
        log_rho = lambda q: float(np.log(rho(q)))
    chi = gauge.chi
    log_chi = gauge.log_chi
    new_gauge = WeylGauge(
        chi=lambda q: float(chi(q) * np.sqrt(rho(q))),
        log_chi=lambda q: float(log_chi(q) + 0.5 * log_rho(q)),
    )
    return ScaledMetric(metric, rho), new_gauge
