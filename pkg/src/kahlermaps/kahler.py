"""Kaehler form, metric determinant and Ricci form of a rotation-invariant potential.

Convention (used everywhere in the package): a real (1,1)-form is stored as
the Hermitian matrix ``h`` with

    omega = (i/2) sum_{i,j} h[i, j] dz_i ^ dzbar_j,

so for omega = (i/2) d dbar Phi one has ``h[i, j] = d^2 Phi / dz_i dzbar_j``,
which for Phi(z) = F(|z_1|^2, ..., |z_n|^2) equals

    h[i, j] = F_ij(x) zbar_i z_j + F_i(x) delta_ij.
"""

import itertools

import numpy as np

from kahlermaps._validation import as_complex, radial_of, to_complex, to_real
from kahlermaps.errors import NumericalError, StepTooLarge
from kahlermaps.potentials import grad_potential, hess_potential


def assemble_form(spec, z):
    """Coefficient matrix of omega_Phi at the point ``z``."""
    z = as_complex(z, spec.dim)
    x = radial_of(z)
    g = grad_potential(spec, x)
    H = hess_potential(spec, x)
    return H * np.outer(z.conj(), z) + np.diag(g).astype(complex)


def is_kahler_at(spec, z, tol=0.0):
    """True iff the metric at ``z`` is positive definite (all eigenvalues > tol)."""
    h = assemble_form(spec, z)
    return bool(np.all(np.linalg.eigvalsh(h) > tol))


def volume_density(spec, z):
    """det h, the density of omega^n against the flat volume form."""
    d = np.linalg.det(assemble_form(spec, z))
    if abs(d.imag) > 1e-10 * max(1.0, abs(d)):
        raise NumericalError(f"determinant of a Hermitian form has imaginary part {d.imag:.3e}")
    return float(d.real)


def ricci_form(spec, z, h_step=1e-3):
    """Coefficient matrix of the Ricci form, -d dbar log det h, by central differences.

    The real Hessian of ``log det h`` in the 2n coordinates (x^1, y^1, ...)
    is differenced with step ``h_step`` and combined into Wirtinger
    derivatives ``d^2/dz_i dzbar_j = (f_xx + f_yy + i (f_xy - f_yx)) / 4``.
    """
    z = as_complex(z, spec.dim)
    y0 = to_real(z)
    N = y0.size

    def logdet(y):
        try:
            d = volume_density(spec, to_complex(y))
        except NumericalError as exc:
            raise StepTooLarge(f"stencil point {y.tolist()} left the domain: {exc}") from exc
        if not d > 0.0:
            raise StepTooLarge(f"det h = {d!r} <= 0 on the stencil at {y.tolist()}")
        return np.log(d)

    f0 = logdet(y0)
    eye = np.eye(N) * h_step
    D = np.empty((N, N))
    for a in range(N):
        D[a, a] = (logdet(y0 + eye[a]) - 2 * f0 + logdet(y0 - eye[a])) / h_step**2
    for a, b in itertools.combinations(range(N), 2):
        ea, eb = eye[a], eye[b]
        val = (
            logdet(y0 + ea + eb) - logdet(y0 + ea - eb) - logdet(y0 - ea + eb) + logdet(y0 - ea - eb)
        ) / (4 * h_step**2)
        D[a, b] = D[b, a] = val
    n = spec.dim
    ric = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            xi, yi, xj, yj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
            ric[i, j] = -0.25 * (D[xi, xj] + D[yi, yj] + 1j * (D[xi, yj] - D[yi, xj]))
    return ric
