"""Gauss hypergeometric function for complex arguments, plus log-gamma.

``hyp2f1`` evaluates the principal branch of 2F1(alpha, beta; gamma; z) for
complex parameters and complex z off the branch cut [1, oo).  The strategy
is the classical one (see DLMF 15.2, 15.8):

* terminating series, summed exactly, when alpha or beta is a non-positive
  integer;
* the direct Gauss series for small |z|;
* the Pfaff transformation z -> z/(z-1) and the Euler transformation where
  they improve convergence;
* the 1-z connection formula (DLMF 15.8.4) near z = 1, provided
  gamma-alpha-beta is not an integer;
* the 1/(1-z) connection formula (DLMF 15.8.3) for large |z|, provided
  alpha-beta is not an integer;
* as a last resort, analytic continuation by Taylor-stepping the
  hypergeometric ODE along a ray from a small-|z| anchor.  This covers the
  region |z| ~ |1-z| ~ 1 where none of the series transformations converge.

Everything here is a pure function of its inputs; no shared mutable state.
Scalars in, scalars out (no array broadcasting).
"""

from __future__ import annotations

import cmath
import math

from scipy import special as _sp

from .errors import BranchCutError, ConvergenceError, PoleError

MAX_TERMS = 20000
# A term counts as converged once it is this small relative to the partial
# sum for three consecutive terms.
TERM_RTOL = 1e-15
_INT_TOL = 1e-12


def _as_complex(name: str, x) -> complex:
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return z


def _nonpositive_int(x: complex, tol: float = _INT_TOL):
    """Return n >= 0 such that x == -n, or None."""
    if abs(x.imag) > tol:
        return None
    n = round(x.real)
    if n > 0 or abs(x.real - n) > tol:
        return None
    return -n


def _is_integer(x: complex, tol: float = 1e-10) -> bool:
    return abs(x.imag) <= tol and abs(x.real - round(x.real)) <= tol


def log_gamma(x) -> complex:
    """Principal branch of log Gamma(x) for complex x.

    Raises PoleError at the poles x = 0, -1, -2, ...
    """
    z = _as_complex("x", x)
    if _nonpositive_int(z) is not None:
        raise PoleError(f"log_gamma pole at non-positive integer x={z}")
    return complex(_sp.loggamma(z))


def _reciprocal_gamma(x: complex) -> complex:
    """1/Gamma(x); zero at the poles of Gamma."""
    return complex(_sp.rgamma(x))


def _gauss_series(a: complex, b: complex, c: complex, z: complex) -> complex:
    """Direct Gauss series; raises ConvergenceError after MAX_TERMS."""
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    consecutive = 0
    for n in range(MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if abs(term) <= TERM_RTOL * max(abs(total), 1e-300):
            consecutive += 1
            if consecutive >= 3:
                return total
        else:
            consecutive = 0
    raise ConvergenceError(
        f"2F1 series did not converge in {MAX_TERMS} terms at z={z}"
    )


def _terminating(a: complex, b: complex, c: complex, z: complex, n: int) -> complex:
    """Sum the degree-n terminating series exactly (n+1 terms)."""
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    for k in range(n):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


def _pfaff(a: complex, b: complex, c: complex, z: complex) -> complex:
    w = z / (z - 1.0)
    return (1.0 - z) ** (-a) * _gauss_series(a, c - b, c, w)


def _euler(a: complex, b: complex, c: complex, z: complex) -> complex:
    return (1.0 - z) ** (c - a - b) * _gauss_series(c - a, c - b, c, z)


def _connect_1mz(a: complex, b: complex, c: complex, z: complex) -> complex:
    """DLMF 15.8.4; requires c-a-b not an integer."""
    w = 1.0 - z
    g_c = log_gamma(c)
    coef1 = cmath.exp(g_c + log_gamma(c - a - b)) * _reciprocal_gamma(c - a) * _reciprocal_gamma(c - b)
    coef2 = cmath.exp(g_c + log_gamma(a + b - c)) * _reciprocal_gamma(a) * _reciprocal_gamma(b)
    s1 = _gauss_series(a, b, a + b - c + 1.0, w)
    s2 = _gauss_series(c - a, c - b, c - a - b + 1.0, w)
    return coef1 * s1 + coef2 * w ** (c - a - b) * s2


def _connect_inv_1mz(a: complex, b: complex, c: complex, z: complex) -> complex:
    """DLMF 15.8.3 with argument 1/(1-z); requires a-b not an integer."""
    w = 1.0 / (1.0 - z)
    g_c = log_gamma(c)
    coef1 = cmath.exp(g_c + log_gamma(b - a)) * _reciprocal_gamma(b) * _reciprocal_gamma(c - a)
    coef2 = cmath.exp(g_c + log_gamma(a - b)) * _reciprocal_gamma(a) * _reciprocal_gamma(c - b)
    s1 = _gauss_series(a, c - b, a - b + 1.0, w)
    s2 = _gauss_series(b, c - a, b - a + 1.0, w)
    return coef1 * (1.0 - z) ** (-a) * s1 + coef2 * (1.0 - z) ** (-b) * s2


def _taylor_step(a, b, c, z0, u, du, dz, n_terms=40):
    """Advance (u, u') by dz using the Taylor series of the ODE solution.

    z(1-z)u'' + (c - (a+b+1)z)u' - ab u = 0, expanded about z0.
    """
    a0 = z0 * (1.0 - z0)
    a1 = 1.0 - 2.0 * z0
    a2 = -1.0
    b0 = c - (a + b + 1.0) * z0
    b1 = -(a + b + 1.0)
    c0 = -a * b
    coefs = [u, du]
    for n in range(n_terms):
        rhs = -(a1 * (n + 1) * n + b0 * (n + 1)) * coefs[n + 1]
        rhs -= (a2 * n * (n - 1) + b1 * n + c0) * coefs[n]
        coefs.append(rhs / (a0 * (n + 2) * (n + 1)))
    val = 0.0j
    for ck in reversed(coefs):
        val = val * dz + ck
    der = 0.0j
    for k in reversed(range(1, len(coefs))):
        der = der * dz + k * coefs[k]
    return val, der


def _continuation(a: complex, b: complex, c: complex, z: complex) -> complex:
    """Analytic continuation along a ray from a small-|z| anchor.

    Step sizes stay under 0.38x the distance to the singular points 0 and 1,
    so each Taylor step converges geometrically.  If the straight ray to z
    passes too close to z = 1 a detour waypoint is inserted on the side of
    the target's half-plane.
    """
    if abs(z) < 1e-300:
        return 1.0 + 0.0j
    direction = z / abs(z)
    z0 = 0.25 * direction
    u = _gauss_series(a, b, c, z0)
    du = a * b / c * _gauss_series(a + 1.0, b + 1.0, c + 1.0, z0)

    waypoints = [z]
    # Detour if the ray from z0 to z would graze z = 1.
    seg = z - z0
    t = ((1.0 - z0).conjugate() * seg).real / abs(seg) ** 2
    if 0.0 < t < 1.0 and abs(z0 + t * seg - 1.0) < 0.2:
        side = 1.0 if (z.imag > 0 or (z.imag == 0 and z.real < 1)) else -1.0
        waypoints.insert(0, 1.0 + 0.45j * side)

    for target in waypoints:
        guard = 0
        while abs(target - z0) > 1e-15:
            room = 0.38 * min(abs(z0), abs(z0 - 1.0))
            step = min(room, abs(target - z0))
            z_new = z0 + step * (target - z0) / abs(target - z0)
            u, du = _taylor_step(a, b, c, z0, u, du, z_new - z0)
            z0 = z_new
            guard += 1
            if guard > 400:
                raise ConvergenceError(
                    f"2F1 continuation stalled on the way to z={z}"
                )
    return u


def hyp2f1(alpha, beta, gamma, z, *, on_cut: str = "raise", method: str = "auto") -> complex:
    """Principal-branch 2F1(alpha, beta; gamma; z) for complex arguments.

    Parameters
    ----------
    on_cut : "raise" | "above" | "below"
        Behaviour for z on the branch cut [1, oo): raise BranchCutError, or
        return the one-sided limit Im z -> +0 / -0.
    method : "auto" | "series" | "pfaff" | "euler"
        "auto" picks a convergent strategy; the named methods force a single
        transformation (used by the cross-validation tests) and fail if it
        does not converge.
    """
    a = _as_complex("alpha", alpha)
    b = _as_complex("beta", beta)
    c = _as_complex("gamma", gamma)
    zz = _as_complex("z", z)

    n_a = _nonpositive_int(a)
    n_b = _nonpositive_int(b)
    n_terminate = None
    if n_a is not None or n_b is not None:
        n_terminate = min(n for n in (n_a, n_b) if n is not None)

    m_c = _nonpositive_int(c)
    if m_c is not None and (n_terminate is None or n_terminate > m_c):
        raise PoleError(
            f"gamma={c} is a non-positive integer and the series does not "
            "terminate soon enough"
        )

    if zz == 0:
        return 1.0 + 0.0j

    if zz.imag == 0.0 and zz.real >= 1.0 and n_terminate is None:
        if on_cut == "raise":
            raise BranchCutError(
                f"z={zz} lies on the branch cut [1, oo); pass on_cut='above' "
                "or 'below' for a one-sided limit"
            )
        if on_cut not in ("above", "below"):
            raise ValueError(f"invalid on_cut={on_cut!r}")
        zz = complex(zz.real, 0.0 if on_cut == "above" else -0.0)

    if method == "series":
        return _gauss_series(a, b, c, zz)
    if method == "pfaff":
        return _pfaff(a, b, c, zz)
    if method == "euler":
        return _euler(a, b, c, zz)
    if method != "auto":
        raise ValueError(f"invalid method={method!r}")

    if n_terminate is not None:
        return _terminating(a, b, c, zz, n_terminate)

    abs_z = abs(zz)
    abs_1mz = abs(1.0 - zz)
    if abs_z <= 0.5:
        return _gauss_series(a, b, c, zz)

    if abs_1mz <= 0.35:
        if not _is_integer(c - a - b):
            return _connect_1mz(a, b, c, zz)
        if abs_z <= 0.95:
            # Integer gamma-alpha-beta: the connection formula degenerates,
            # but the direct series still converges inside the unit disk.
            return _gauss_series(a, b, c, zz)
        raise BranchCutError(
            "z -> 1 limit with integer gamma-alpha-beta is logarithmic; "
            f"cannot evaluate at z={zz}"
        )

    w_pfaff = abs(zz / (zz - 1.0))
    if w_pfaff <= 0.5:
        return _pfaff(a, b, c, zz)

    w_inv = 1.0 / abs_1mz
    ab_int = _is_integer(a - b)
    if w_inv <= 0.5 and not ab_int:
        return _connect_inv_1mz(a, b, c, zz)

    # Looser retries before falling back to continuation.
    if abs_z <= 0.8:
        return _gauss_series(a, b, c, zz)
    if w_pfaff <= 0.8:
        return _pfaff(a, b, c, zz)
    if w_inv <= 0.8 and not ab_int:
        return _connect_inv_1mz(a, b, c, zz)

    return _continuation(a, b, c, zz)


def hyp2f1_dz(alpha, beta, gamma, z, *, on_cut: str = "raise") -> complex:
    """d/dz of 2F1 via the contiguous relation (ab/c) 2F1(a+1, b+1; c+1; z)."""
    a = _as_complex("alpha", alpha)
    b = _as_complex("beta", beta)
    c = _as_complex("gamma", gamma)
    return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, on_cut=on_cut)
