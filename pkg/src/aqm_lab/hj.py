"""Weyl-gauge Hamilton-Jacobi system on the top configuration space.

The classical data are a phase field S(q) and a Weyl gauge chi(q); the
electromagnetic data are uniform electric and magnetic fields extended to
the group directions through the right-invariant frame. The module checks
that the nonlinear pair (Hamilton-Jacobi equation, transport equation) is
exactly equivalent to one linear wave equation for
psi = chi^(-(n-2)/2) exp(i S), with the conformal coupling
xi^2 = (n-2)/(4(n-1)) and no approximation: the complex residual of the
wave operator splits into the two real residuals, and the defect of that
split is zero to stencil accuracy.

Natural units hbar = c = 1; the electric charge stays an explicit knob.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .config_space import killing_vectors, split_point
from .fd import central_diff, gradient
from .fields import draw_field
from .geometry import MetricField, WeylGauge, covariant_divergence_at, \
    riemann_scalar_at, weyl_scalar_at


def conformal_coupling(n: int) -> float:
    """Conformal coupling constant xi(n) = sqrt((n-2) / (4(n-1))).

    This is the unique coupling for which the curvature-potential wave
    equation is conformally invariant; xi(10) = sqrt(2)/3, xi(4) = sqrt(1/6),
    xi(2) = 0.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return float(np.sqrt((n - 2) / (4.0 * (n - 1))))


# ---------------------------------------------------------------------------
# electromagnetic configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EMConfig:
    """Uniform electromagnetic field with its coupling constants.

    ``e_field`` and ``h_field`` are the electric and magnetic 3-vectors. The
    spacetime potential A_0 = E.x, A_k = (1/2)(H x x)_k reproduces the field
    strength F_{0k} = -E_k, F_{kl} = eps_{klm} H_m. ``kappa`` scales the
    group-direction extension of the potential.
    """

    e_field: np.ndarray
    h_field: np.ndarray
    e_charge: float = 1.0
    kappa: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "e_field", np.asarray(self.e_field, dtype=float))
        object.__setattr__(self, "h_field", np.asarray(self.h_field, dtype=float))
        if self.e_field.shape != (3,) or self.h_field.shape != (3,):
            raise ValueError("e_field and h_field must be 3-vectors")

    @classmethod
    def zero(cls, e_charge: float = 1.0, kappa: float = 2.0) -> "EMConfig":
        return cls(np.zeros(3), np.zeros(3), e_charge=e_charge, kappa=kappa)

    def potential_spacetime(self, x: np.ndarray) -> np.ndarray:
        """Covariant components (A_0, A_1, A_2, A_3) at the event x."""
        x = np.asarray(x, dtype=float)
        a = np.empty(4)
        a[0] = self.e_field @ x[1:]
        a[1:] = 0.5 * np.cross(self.h_field, x[1:])
        return a

    def field_strength(self) -> np.ndarray:
        """Constant field tensor F_{mu nu} with F_{0k} = -E_k, F_{kl} = eps_{klm} H_m."""
        f = np.zeros((4, 4))
        f[0, 1:] = -self.e_field
        f[1:, 0] = self.e_field
        e = self.h_field
        f[1, 2], f[2, 1] = e[2], -e[2]
        f[2, 3], f[3, 2] = e[0], -e[0]
        f[3, 1], f[1, 3] = e[1], -e[1]
        return f

    def invariant_h2_e2(self) -> float:
        """The scalar invariant (1/2) F_{mu nu} F^{mu nu} = H^2 - E^2."""
        return float(self.h_field @ self.h_field - self.e_field @ self.e_field)

    def potential_gradient(self) -> np.ndarray:
        """Constant Jacobian dA[mu, nu] = d_mu A_nu of the spacetime potential."""
        da = np.zeros((4, 4))
        da[1:, 0] = self.e_field
        for i, j, m in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            da[i, j] = 0.5 * self.h_field[m - 1]
            da[j, i] = -0.5 * self.h_field[m - 1]
        return da

    def generator_charges(self) -> np.ndarray:
        """Constant algebra-frame components -(kappa/2) (H1, H2, H3, E1, E2, E3)."""
        return -0.5 * self.kappa * np.concatenate([self.h_field, self.e_field])

    def potential(self, q: np.ndarray) -> np.ndarray:
        """Full 10-component covariant potential at a configuration point."""
        x, theta = split_point(q)
        return np.concatenate([self.potential_spacetime(x),
                               extend_potential(self, theta)])


def extend_potential(em: EMConfig, theta: np.ndarray) -> np.ndarray:
    """Group-direction components A_alpha of the extended potential.

    The uniform field defines constant charges on the right-invariant frame;
    pulling them back through the frame gives chart components
    A_alpha = xi[alpha, a] * (-(kappa/2) (H, E))_a. At theta = 0 these are
    the charges themselves.
    """
    return killing_vectors(theta) @ em.generator_charges()


# ---------------------------------------------------------------------------
# wave data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WaveInputs:
    """Classical data of the system: phase field S(q) and Weyl gauge chi(q)."""

    s_field: Callable[[np.ndarray], float]
    gauge: WeylGauge


def draw_wave_inputs(rng: np.random.Generator, dim: int = 10, n_terms: int = 4,
                     k_scale: float = 0.5, amp_scale: float = 1.0) -> WaveInputs:
    """Random band-limited phase and log-gauge fields."""
    s_field = draw_field(rng, dim, n_terms=n_terms, k_scale=k_scale,
                         amp_scale=amp_scale)
    log_chi = draw_field(rng, dim, n_terms=n_terms, k_scale=k_scale,
                         amp_scale=amp_scale)
    return WaveInputs(s_field=s_field, gauge=WeylGauge.from_log(log_chi))


def momentum_covector(fields: WaveInputs, em: EMConfig, point: np.ndarray,
                      h: float = 1e-3, order: int = 4) -> np.ndarray:
    """Gauge-covariant momentum u_j = d_j S - e A_j at a point."""
    point = np.asarray(point, dtype=float)
    return gradient(fields.s_field, point, h=h, order=order) \
        - em.e_charge * em.potential(point)


def born_density(fields: WaveInputs, point: np.ndarray, n: int = 10) -> float:
    """Scalar density |psi|^2 = chi^(-(n-2)) carried by the linearizing map."""
    return float(np.exp(-(n - 2) * fields.gauge.log_chi(np.asarray(point, dtype=float))))


def wave_ansatz(fields: WaveInputs, n: int = 10) -> Callable[[np.ndarray], complex]:
    """The linearizing map psi(q) = chi^(-(n-2)/2) exp(i S)."""
    s_field, log_chi = fields.s_field, fields.gauge.log_chi

    def psi(q: np.ndarray) -> complex:
        q = np.asarray(q, dtype=float)
        return complex(np.exp(-(n - 2) / 2.0 * log_chi(q) + 1j * s_field(q)))

    return psi


# ---------------------------------------------------------------------------
# residuals and the linearization identity
# ---------------------------------------------------------------------------


def _resolve_r_scalar(metric: MetricField, point: np.ndarray,
                      r_scalar: float | None, order: int) -> float:
    if r_scalar is not None:
        return float(r_scalar)
    closed = getattr(metric, "riemann_scalar", None)
    if callable(closed):
        return float(closed())
    return riemann_scalar_at(metric, point, order=order)


def hj_residual(fields: WaveInputs, em: EMConfig, metric: MetricField,
                point: np.ndarray, n: int | None = None, xi2: float | None = None,
                r_scalar: float | None = None, h: float = 1e-3,
                order: int = 4) -> float:
    """Residual of the Hamilton-Jacobi equation at a point.

    g^{ij} u_i u_j + xi^2 R_W, which vanishes on solutions. ``xi2`` may
    override the conformal coupling (for control experiments) and
    ``r_scalar`` may inject a known Riemann scalar; both default to the
    honest values.
    """
    point = np.asarray(point, dtype=float)
    if n is None:
        n = metric.dim
    if xi2 is None:
        xi2 = conformal_coupling(n) ** 2
    r = _resolve_r_scalar(metric, point, r_scalar, order)
    u = momentum_covector(fields, em, point, h=h, order=order)
    rw = weyl_scalar_at(metric, fields.gauge, point, n=n, h=h, order=order,
                        r_scalar=r)
    return float(u @ metric.inverse(point) @ u + xi2 * rw)


def divergence_residual(fields: WaveInputs, em: EMConfig, metric: MetricField,
                        point: np.ndarray, n: int | None = None,
                        h: float = 1e-3, order: int = 4) -> float:
    """Residual of the transport equation: covariant divergence of the
    density-weighted momentum current chi^(-(n-2)) g^{ij} u_j."""
    point = np.asarray(point, dtype=float)
    if n is None:
        n = metric.dim

    def current_up(q):
        u = momentum_covector(fields, em, q, h=h, order=order)
        return born_density(fields, q, n=n) * (metric.inverse(q) @ u)

    return covariant_divergence_at(metric, current_up, point, h=h, order=order)


def current_vector(fields: WaveInputs, em: EMConfig, metric: MetricField,
                   point: np.ndarray, n: int | None = None, h: float = 1e-3,
                   order: int = 4) -> np.ndarray:
    """Conserved current density j^i = |psi|^2 sqrt(g) g^{ij} u_j at a point."""
    point = np.asarray(point, dtype=float)
    if n is None:
        n = metric.dim
    u = momentum_covector(fields, em, point, h=h, order=order)
    return born_density(fields, point, n=n) * metric.sqrt_det(point) \
        * (metric.inverse(point) @ u)


def wave_operator(psi: Callable[[np.ndarray], complex], em: EMConfig,
                  metric: MetricField, point: np.ndarray, xi2: float,
                  r_scalar: float, h: float = 1e-3, order: int = 4) -> complex:
    """Minimally coupled curvature-potential wave operator applied to psi.

    W psi = -(1/sqrt g)(d_i - i e A_i) [sqrt g g^{ij} (d_j - i e A_j) psi]
            + xi^2 R psi,
    evaluated at one point by nested central differences.
    """
    point = np.asarray(point, dtype=float)
    e = em.e_charge

    def flux(q):
        dpsi = np.array([central_diff(psi, q, axis=j, h=h, order=order)
                         for j in range(metric.dim)])
        covariant = dpsi - 1j * e * em.potential(q) * psi(q)
        return metric.sqrt_det(q) * (metric.inverse(q) @ covariant)

    div = 0.0 + 0.0j
    for i in range(metric.dim):
        div += central_diff(lambda q: flux(q)[i], point, axis=i, h=h, order=order)
    flux0 = flux(point)
    div -= 1j * e * em.potential(point) @ flux0
    return complex(-div / metric.sqrt_det(point) + xi2 * r_scalar * psi(point))


def linearization_check(fields: WaveInputs, em: EMConfig, metric: MetricField,
                        point: np.ndarray, n: int | None = None,
                        xi2: float | None = None, r_scalar: float | None = None,
                        h: float = 1e-3, order: int = 4
                        ) -> tuple[complex, float, float]:
    """Verify the exact linearization at one point.

    Returns (defect, hj_res, div_res) where

        defect = (W psi)/psi - hj_res + i chi^(n-2) div_res.

    At the conformal coupling the identity
    (W psi)/psi = hj_res - i chi^(n-2) div_res holds exactly, so the defect
    is zero to stencil accuracy whatever the fields, the electromagnetic
    configuration, and the Riemann scalar value (which cancels between the
    two sides; any consistent ``r_scalar`` gives the same defect). With a
    wrong coupling injected via ``xi2`` the defect becomes
    (xi2_true - xi2) (R_W - R), which is generically far from zero.
    """
    point = np.asarray(point, dtype=float)
    if n is None:
        n = metric.dim
    if xi2 is None:
        xi2 = conformal_coupling(n) ** 2
    r = _resolve_r_scalar(metric, point, r_scalar, order)

    psi = wave_ansatz(fields, n=n)
    w = wave_operator(psi, em, metric, point, xi2=xi2, r_scalar=r, h=h, order=order)
    hj = hj_residual(fields, em, metric, point, n=n, xi2=xi2, r_scalar=r,
                     h=h, order=order)
    div = divergence_residual(fields, em, metric, point, n=n, h=h, order=order)
    chi_pow = float(np.exp((n - 2) * fields.gauge.log_chi(point)))
    defect = w / psi(point) - hj + 1j * chi_pow * div
    return complex(defect), float(hj), float(div)
