"""Input validation helpers shared by the library and the estimators."""

import numpy as np
from sklearn.utils.validation import check_array


def check_radial(x, dim=None):
    """Return ``x`` as a float vector of squared moduli, checking shape and sign."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if dim is not None and x.size != dim:
        raise ValueError(f"expected {dim} radial coordinates, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("radial coordinates must be finite")
    if np.any(x < 0.0):
        raise ValueError("radial coordinates x_j = |z_j|^2 must be nonnegative")
    return x


def as_complex(z, dim=None):
    """Coerce a point of C^n to a complex vector.

    Complex input is taken as is.  A real vector of length n is a point with
    zero imaginary parts; a real vector of length 2n (when ``dim`` is given)
    is read as interleaved pairs (Re z1, Im z1, ...).
    """
    z = np.asarray(z)
    if not np.iscomplexobj(z):
        z = np.asarray(z, dtype=float).reshape(-1)
        if dim is not None and z.size == 2 * dim:
            z = z[0::2] + 1j * z[1::2]
    z = z.astype(complex).reshape(-1)
    if dim is not None and z.size != dim:
        raise ValueError(f"expected a point in C^{dim}, got {z.size} coordinates")
    if not np.all(np.isfinite(z)):
        raise ValueError("point coordinates must be finite")
    return z


def to_real(z):
    """Interleave real and imaginary parts: C^n -> R^2n."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def to_complex(y):
    y = np.asarray(y, dtype=float)
    return y[..., 0::2] + 1j * y[..., 1::2]


def check_points(X, dim=None):
    """Validate a sample matrix of shape (n_samples, 2n) in interleaved real form."""
    X = check_array(X, dtype=float, ensure_2d=True)
    if X.shape[1] % 2:
        raise ValueError("points need an even number of real columns (Re, Im pairs)")
    if dim is not None and X.shape[1] != 2 * dim:
        raise ValueError(f"expected {2 * dim} columns, got {X.shape[1]}")
    return X


def radial_of(z):
    """x_j = |z_j|^2 for a complex point (or stack of points)."""
    z = np.asarray(z, dtype=complex)
    return z.real**2 + z.imag**2
