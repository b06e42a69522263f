"""Small fixed-size complex linear algebra for the four-level register.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128`` marked
read-only, so callers can pass them around freely without defensive copies.
Basis ordering follows the register convention ``index = 2*q_r + q_s``: the R
qubit is the slow (left) tensor factor.
"""

from __future__ import annotations

import numpy as np

from vsq.errors import NotUnitary

DEFAULT_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix/vector entries must be finite")
    arr.setflags(write=False)
    return arr


def matrix2(entries) -> np.ndarray:
    m = _frozen(entries)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    return m


def matrix4(entries) -> np.ndarray:
    m = _frozen(entries)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    return m


def vector4(amplitudes) -> np.ndarray:
    v = _frozen(amplitudes)
    if v.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got shape {v.shape}")
    return v


I2 = matrix2(np.eye(2))
I4 = matrix4(np.eye(4))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``a (x) b`` with ``a`` acting on the R (high-order) qubit.

    ``out[2*i + k, 2*j + l] == a[i, j] * b[k, l]``.
    """
    return matrix4(np.kron(matrix2(a), matrix2(b)))


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff the largest entry of ``|m^H m - I|`` is at most ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    if m.shape != (n, n):
        return False
    return float(np.max(np.abs(m.conj().T @ m - np.eye(n)))) <= tol


def _require_unitary(m: np.ndarray, tol: float, what: str = "matrix") -> None:
    if not is_unitary(m, tol):
        raise NotUnitary(f"{what} is not unitary within tol={tol:g}")


def embed_two_level(u: np.ndarray, i: int, j: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Lift a 2x2 unitary onto the levels ``|i>, |j>`` of the register.

    ``|i>`` plays the role of the first basis vector of ``u``; every other
    basis vector is left untouched.
    """
    if not (0 <= i < j <= 3):
        raise IndexError(f"need 0 <= i < j <= 3, got ({i}, {j})")
    u = matrix2(u)
    _require_unitary(u, tol, "two-level block")
    out = np.eye(4, dtype=np.complex128)
    out[i, i] = u[0, 0]
    out[i, j] = u[0, 1]
    out[j, i] = u[1, 0]
    out[j, j] = u[1, 1]
    return matrix4(out)


def equal_up_to_global_phase(u: np.ndarray, v: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Decide whether ``u == exp(i*theta) * v`` for some real ``theta``.

    Uses ``n - |tr(u^H v)| <= tol``. For unitaries this is a squared-distance
    measure (``min_theta ||u - e^{i theta} v||_F^2 = 2(n - |tr|)``), so
    chaining two comparisons at ``tol`` is guaranteed only at
    ``2*tol + tol**2/4``.
    """
    _require_unitary(u, tol, "first operand")
    _require_unitary(v, tol, "second operand")
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        return False
    n = u.shape[0]
    return n - abs(np.trace(u.conj().T @ v)) <= tol


def apply(u: np.ndarray, v: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    _require_unitary(u, tol)
    return vector4(np.asarray(u) @ vector4(v))


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _fmt(z: complex) -> str:
    return f"{z.real:.6g}{z.imag:+.6g}i"


def render(m: np.ndarray) -> str:
    """Text form used in reports: one row per line, entries as ``re+imi``."""
    m = np.asarray(m)
    return "\n".join(" ".join(_fmt(complex(z)) for z in row) for row in m)
