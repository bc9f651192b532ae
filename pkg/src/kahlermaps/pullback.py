"""Numerical certification of Psi^*(omega_target) = omega_source for special maps.

Two independent routes are combined in :func:`verify_pullback`:

* the real 2n x 2n pullback ``J^T Omega_target J - Omega_source`` with a
  central-difference Jacobian ``J`` (this sees the full form, including any
  (2,0) and (0,2) parts);
* the matrix ``A[k, l]`` built from dual-number derivatives of psi^2, whose
  symmetry is equivalent to the vanishing of the (2,0) part.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from kahlermaps._validation import as_complex, radial_of, to_complex, to_real
from kahlermaps.errors import NotHermitian, TooFewPoints
from kahlermaps.kahler import assemble_form


def form_to_real(h):
    """Real antisymmetric matrix of (i/2) sum h_ij dz_i ^ dzbar_j.

    Real coordinates are ordered (x^1, y^1, ..., x^n, y^n) with
    z_j = x^j + i y^j, and ``omega(u, v) = u @ Omega @ v``.  The identity
    matrix maps to the standard sum_j dx^j ^ dy^j.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("form matrix must be square")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > 1e-10 * max(1.0, np.max(np.abs(h), initial=0.0)):
        raise NotHermitian("form matrix is not Hermitian")
    n = h.shape[0]
    om = np.empty((2 * n, 2 * n))
    om[0::2, 0::2] = -h.imag
    om[0::2, 1::2] = h.real
    om[1::2, 0::2] = -h.real
    om[1::2, 1::2] = -h.imag
    return 0.5 * (om - om.T)


def real_jacobian(m, z, step=None):
    """Central-difference Jacobian of the real map R^2n -> R^2n induced by ``m``.

    The default step is 1e-6 * max(1, |z|) rounded to a power of two, so
    ``y +- step`` is exact and linear maps get an exact Jacobian.
    """
    z = as_complex(z, m.dim)
    y0 = to_real(z)
    if step is None:
        step = 2.0 ** round(math.log2(1e-6 * max(1.0, float(np.linalg.norm(z)))))
    N = y0.size
    J = np.empty((N, N))
    for a in range(N):
        e = np.zeros(N)
        e[a] = step
        J[:, a] = (to_real(m(to_complex(y0 + e))) - to_real(m(to_complex(y0 - e)))) / (2 * step)
    return J


def akl_matrix(m, z):
    """A[k, l] = dXi_k(Psi) d(psi_k^2)/dx_l + psi_k^2 sum_j Xi_jk(Psi) d(psi_j^2)/dx_l x_j."""
    x = radial_of(as_complex(z, m.dim))
    sq, jac = m.profile_sq_jacobian(x)
    y = sq * x
    tg = m.target.gradient(y)
    th = m.target.hessian(y)
    return tg[:, None] * jac + sq[:, None] * (th.T @ (x[:, None] * jac))


def closed_form_pullback(m, z):
    """(1,1) part of Psi^*(omega_target) assembled from psi^2 and its derivatives.

    h[k, l] = ((A_kl + A_lk)/2 + Xi_kl(Psi) psi_k^2 psi_l^2) zbar_k z_l
              + Xi_k(Psi) psi_k^2 delta_kl
    """
    z = as_complex(z, m.dim)
    x = radial_of(z)
    sq = m.profile_sq(x)
    y = sq * x
    A = akl_matrix(m, z)
    th = m.target.hessian(y)
    tg = m.target.gradient(y)
    inner = 0.5 * (A + A.T) + th * np.outer(sq, sq)
    return inner * np.outer(z.conj(), z) + np.diag(tg * sq).astype(complex)


def pullback_residual(m, spec, z, step=None):
    """J^T Omega_target(Psi(z)) J - Omega_source(z) as a 2n x 2n real matrix."""
    z = as_complex(z, m.dim)
    J = real_jacobian(m, z, step)
    target_form = form_to_real(assemble_form(m.target.potential, m(z)))
    source_form = form_to_real(assemble_form(spec, z))
    return J.T @ target_form @ J - source_form


@dataclass
class PullbackReport:
    points: list
    residuals: list
    akl: list
    max_residual: float
    akl_asymmetry: float
    tolerance: float
    labels: list = field(default_factory=lambda: ["pullback", "akl_symmetry"])

    @property
    def passed(self):
        return self.max_residual <= self.tolerance and self.akl_asymmetry <= self.tolerance

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def to_dict(self):
        worst = int(np.argmax(self.residuals)) if self.residuals else None
        out = {
            "status": self.verdict,
            "n_points": len(self.points),
            "max_residual": self.max_residual,
            "akl_asymmetry": self.akl_asymmetry,
            "tolerance": self.tolerance,
        }
        if worst is not None:
            out["witness"] = to_real(self.points[worst]).tolist()
        return out


def verify_pullback(m, spec, points, tol=1e-8, step=None):
    """Check the map ``m`` is symplectic from ``spec``'s form to its target's.

    Residual is the entrywise max norm over all points; per-point lists keep
    the input order, so the report does not depend on evaluation order.
    """
    pts = [as_complex(z, m.dim) for z in points]
    if not pts:
        raise TooFewPoints("verify_pullback needs at least one point")
    res, asym = [], []
    for z in pts:
        res.append(float(np.max(np.abs(pullback_residual(m, spec, z, step)))))
        A = akl_matrix(m, z)
        asym.append(float(np.max(np.abs(A - A.T))))
    return PullbackReport(pts, res, asym, max(res), max(asym), float(tol))
