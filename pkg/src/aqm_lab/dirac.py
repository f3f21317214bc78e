"""Reduction of the top wave equation to the squared spin-1/2 equation.

Acting on the parity-symmetric spin-1/2 mode expansion, the 10-dimensional
wave operator collapses to a 4x4 operator on spacetime plane waves: the
gauge-covariant d'Alembertian plus a spin coupling block plus a constant
curvature term. The same object, up to a known field-strength scalar, is
the square of the covariant Dirac operator in the mostly-plus signature.
Identifying the constant terms fixes the internal length scale a against
the particle mass and yields the mass spectrum over all irreps.

Operators are evaluated on plane waves psi(x) = w exp(i p.x) with the
uniform-field potential, for which the action of covariant momentum
products is exact (polynomial coefficients only), so every identity here
is checked to rounding error rather than stencil error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag
from scipy.optimize import brentq

from .config_space import MINKOWSKI
from .hj import EMConfig, conformal_coupling
from .lorentz_reps import Irrep, casimir_value, irrep_generators

# ---------------------------------------------------------------------------
# gamma matrices, mostly-plus signature
# ---------------------------------------------------------------------------


def pauli_matrices() -> np.ndarray:
    return np.array([
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ], dtype=complex)


def gamma_matrices() -> np.ndarray:
    """Dirac matrices for g = diag(-1, 1, 1, 1): {gamma^mu, gamma^nu} = 2 g^{mu nu}.

    gamma^0 = i [[0, I], [I, 0]], gamma^k = i [[0, -sigma_k], [sigma_k, 0]].
    """
    sig = pauli_matrices()
    zero = np.zeros((2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    out = np.empty((4, 4, 4), dtype=complex)
    out[0] = 1j * np.block([[zero, eye], [eye, zero]])
    for k in range(3):
        out[k + 1] = 1j * np.block([[zero, -sig[k]], [sig[k], zero]])
    return out


def spin_sigma_matrices() -> np.ndarray:
    """Block-diagonal spin matrices Sigma_k = diag(sigma_k, sigma_k)."""
    sig = pauli_matrices()
    return np.stack([block_diag(sig[k], sig[k]) for k in range(3)])


def dirac_alpha_matrices() -> np.ndarray:
    """Chirality-weighted matrices alpha_k = diag(sigma_k, -sigma_k)."""
    sig = pauli_matrices()
    return np.stack([block_diag(sig[k], -sig[k]) for k in range(3)])


def parity_generators() -> tuple[np.ndarray, np.ndarray]:
    """Generators of the parity-symmetric spin-1/2 pair, first factor (0, 1/2).

    J = Sigma/2 and K = (i/2) alpha as block matrices; the direct sum of the
    (0, 1/2) and (1/2, 0) irrep generators in that order.
    """
    ju, ku = irrep_generators(Irrep(0.0, 0.5))
    jd, kd = irrep_generators(Irrep(0.5, 0.0))
    j = np.stack([block_diag(ju[k], jd[k]) for k in range(3)])
    k_ = np.stack([block_diag(ku[k], kd[k]) for k in range(3)])
    return j, k_


# ---------------------------------------------------------------------------
# spin coupling block
# ---------------------------------------------------------------------------


def spin_coupling_matrix(rep: Irrep, em: EMConfig, a: float) -> np.ndarray:
    """Field-shifted Casimir block of one irrep.

    sum_k [(1/a) J_k - (kappa e a / 2) H_k]^2
        - sum_k [(1/a) K_k - (kappa e a / 2) E_k]^2.

    Field-free it is (casimir / a^2) I; the cross terms carry the magnetic
    and electric moment couplings, the squares add the quadratic invariant
    (kappa e a / 2)^2 (H^2 - E^2).
    """
    j, k_ = irrep_generators(rep)
    eye = np.eye(rep.dim)
    gamma = 0.5 * em.kappa * em.e_charge * a
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for comp in range(3):
        m = j[comp] / a - gamma * em.h_field[comp] * eye
        n = k_[comp] / a - gamma * em.e_field[comp] * eye
        out += m @ m - n @ n
    return out


def parity_spin_coupling(rep: Irrep, em: EMConfig, a: float) -> np.ndarray:
    """Spin coupling block on the parity-symmetric pair rep + conjugate."""
    return block_diag(spin_coupling_matrix(rep, em, a),
                      spin_coupling_matrix(rep.conjugate, em, a))


# ---------------------------------------------------------------------------
# mass scale and spectrum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MassScale:
    """Internal length scale fixed by the particle mass.

    a = sqrt(3 (1 + 4 xi^2) / 2) / mass, the unique scale at which the
    constant terms of the reduced spin-1/2 operator compose the squared
    mass: casimir(0,1/2) + 6 xi^2 = m^2 a^2.
    """

    mass: float
    n: int = 10

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")

    @property
    def xi2(self) -> float:
        return conformal_coupling(self.n) ** 2

    @property
    def a(self) -> float:
        return float(np.sqrt(1.5 * (1.0 + 4.0 * self.xi2)) / self.mass)


def mass_closure_defect(n: int = 10) -> float:
    """|casimir(0,1/2) + 6 xi^2 - m^2 a^2| at any mass (mass drops out)."""
    scale = MassScale(mass=1.0, n=n)
    lhs = casimir_value(Irrep(0.0, 0.5)) + 6.0 * scale.xi2
    return float(abs(lhs - (scale.mass * scale.a) ** 2))


def mass_spin_spectrum(reps: list[Irrep], a: float, n: int = 10) -> list[dict]:
    """Squared-mass spectrum m^2(u, v) = (casimir(u, v) + 6 xi^2) / a^2.

    Quadratic in the spin content through the Casimir, the same closure that
    fixes the spin-1/2 mass; returned as records for direct serialization.
    """
    xi2 = conformal_coupling(n) ** 2
    out = []
    for rep in reps:
        cas = casimir_value(rep)
        out.append({
            "u": rep.u,
            "v": rep.v,
            "casimir": cas,
            "m2": (cas + 6.0 * xi2) / a ** 2,
        })
    return out


# ---------------------------------------------------------------------------
# plane-wave operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneWave:
    """Spinor plane wave w exp(i p.x); momentum components are covariant."""

    momentum: np.ndarray
    spinor: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "momentum", np.asarray(self.momentum, dtype=float))
        object.__setattr__(self, "spinor", np.asarray(self.spinor, dtype=complex))
        if self.momentum.shape != (4,) or self.spinor.shape != (4,):
            raise ValueError("momentum and spinor must be 4-vectors")
        if not np.any(self.spinor):
            raise ValueError("spinor must be nonzero")


def momentum_product_symbol(p: np.ndarray, em: EMConfig, x: np.ndarray) -> np.ndarray:
    """Exact symbol T[mu, nu] of Pi_mu Pi_nu on the plane wave exp(i p.x).

    With Pi_mu = -i d_mu - e A_mu and the potential linear in x,
    Pi_mu Pi_nu exp(i p.x) = T[mu, nu] exp(i p.x) with
    T = pi (x) pi + i e dA, pi = p - e A(x). No finite differences involved.
    """
    pi = np.asarray(p, dtype=float) - em.e_charge * em.potential_spacetime(x)
    return np.multiply.outer(pi, pi).astype(complex) \
        + 1j * em.e_charge * em.potential_gradient()


def top_spinor_matrix(p: np.ndarray, em: EMConfig, scale: MassScale,
                      x: np.ndarray | None = None,
                      counterterm: bool = False) -> np.ndarray:
    """Reduced 4x4 operator of the top wave equation on a spin-1/2 plane wave.

    g^{mu nu} Pi_mu Pi_nu I + (spin coupling block) + 6 xi^2 / a^2 I.
    With ``counterterm`` the curvature term is shifted by
    -(e a / xi)^2 (H^2 - E^2) xi^2, which removes the quadratic field
    invariant introduced by the spin coupling squares.
    """
    if x is None:
        x = np.zeros(4)
    a = scale.a
    t = momentum_product_symbol(p, em, x)
    scalar = np.einsum("mn,mn->", np.linalg.inv(MINKOWSKI), t)
    curvature = 6.0 * scale.xi2 / a ** 2
    if counterterm:
        curvature -= (em.e_charge * a) ** 2 * em.invariant_h2_e2()
    return scalar * np.eye(4, dtype=complex) \
        + parity_spin_coupling(Irrep(0.0, 0.5), em, a) \
        + curvature * np.eye(4, dtype=complex)


def squared_dirac_matrix(p: np.ndarray, em: EMConfig, mass: float,
                         x: np.ndarray | None = None) -> np.ndarray:
    """Square of the covariant Dirac operator on a plane wave, plus m^2.

    gamma^mu gamma^nu Pi_mu Pi_nu + m^2 c^2 I in the mostly-plus signature;
    this matrix annihilates on-shell free spinors with (p^0)^2 = |p|^2 + m^2.
    """
    if x is None:
        x = np.zeros(4)
    gam = gamma_matrices()
    t = momentum_product_symbol(p, em, x)
    out = np.einsum("mij,njk,mn->ik", gam, gam, t)
    return out + mass ** 2 * np.eye(4, dtype=complex)


def top_spinor_operator(wave: PlaneWave, em: EMConfig, scale: MassScale,
                        point: np.ndarray | None = None,
                        counterterm: bool = False) -> np.ndarray:
    """Apply the reduced top operator to a plane wave's spinor amplitude."""
    x = None if point is None else np.asarray(point, dtype=float)[:4]
    return top_spinor_matrix(wave.momentum, em, scale, x=x,
                             counterterm=counterterm) @ wave.spinor


def squared_dirac_operator(wave: PlaneWave, em: EMConfig, mass: float,
                           point: np.ndarray | None = None) -> np.ndarray:
    """Apply the squared Dirac operator to a plane wave's spinor amplitude."""
    x = None if point is None else np.asarray(point, dtype=float)[:4]
    return squared_dirac_matrix(wave.momentum, em, mass, x=x) @ wave.spinor


def dispersion_root(p_spatial: np.ndarray, scale: MassScale) -> float:
    """Positive-energy root p^0 of the field-free reduced operator.

    Found by bracketed root finding on the scalar part of the operator; the
    closed-form answer is sqrt(|p|^2 + mass^2).
    """
    p_spatial = np.asarray(p_spatial, dtype=float)
    em = EMConfig.zero()

    def scalar_part(p0: float) -> float:
        m = top_spinor_matrix(np.array([p0, *p_spatial]), em, scale)
        return float(np.real(np.trace(m)) / 4.0)

    upper = np.sqrt(p_spatial @ p_spatial + (2.0 * scale.mass) ** 2) + 2.0
    return float(brentq(scalar_part, 0.0, upper, xtol=1e-14, rtol=1e-15))
