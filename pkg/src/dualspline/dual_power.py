"""Dual power basis and dual truncated power basis on [0, 1].

The truncated power basis of degree ``n`` with simple interior knots
``t_1 < ... < t_m`` is ``1, t, ..., t^n, (t - t_1)_+^n, ..., (t - t_m)_+^n``.
Its dual functions are stored as

    d_j(t) = sum_k Psi[k, j] L_k(t) + sum_h Lambda[h, j] (t - t_h)_+^n

and are grown one knot at a time from the dual power basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConditioningError
from .legendre import clenshaw_eval, hyp2f1_terminating, legendre_power_matrix, pochhammer
from .spline_core import truncated_power_eval

#: Relative size below which the extension denominator counts as zero.
EXTENSION_GUARD = 1e-13


@dataclass(frozen=True)
class TruncatedDualState:
    """Dual truncated power basis after some number of knot extensions.

    Columns ``0..n`` are dual to the monomials, column ``n + 1 + h`` is dual
    to ``(t - knots[h])_+^n``. ``knots`` is kept in increasing order.
    """

    n: int
    knots: tuple[float, ...]
    Psi: np.ndarray = field(repr=False)
    Lambda: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.n + 1 + len(self.knots)


def dual_power_basis(n: int) -> np.ndarray:
    """``Phi[i, j] = (2i+1) (-i)_j (i+1)_j / (j!)^2``; column ``j`` is dual to ``t^j``."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    phi = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i + 1):
            phi[i, j] = (2 * i + 1) * pochhammer(-i, j) * pochhammer(i + 1, j)
            phi[i, j] /= float(np.prod(np.arange(1, j + 1))) ** 2
    return phi


def v_moment_vector(n: int, t_i: float) -> np.ndarray:
    """Moments ``v_j = <t^j, (t - t_i)_+^n>`` for ``j = 0..n`` in O(n).

    Three-term recurrence in ``j`` with ``a = (1 - t_i) / t_i``.
    """
    if not 0.0 < t_i < 1.0:
        raise ValueError(f"knot {t_i!r} outside (0, 1)")
    v = np.empty(n + 1)
    v[0] = (1.0 - t_i) ** (n + 1) / (n + 1)
    if n >= 1:
        v[1] = t_i * v[0] + (1.0 - t_i) ** (n + 2) / (n + 2)
    a = (1.0 - t_i) / t_i
    for j in range(2, n + 1):
        v[j] = (((a + 2) * j + n * (a + 1)) * t_i * v[j - 1]
                - (a + 1) * (j - 1) * t_i ** 2 * v[j - 2]) / (n + j + 1)
    return v


def v_moment_hypergeometric(n: int, t_i: float) -> np.ndarray:
    """Same moments as :func:`v_moment_vector`, one ``2F1`` sum per entry."""
    if not 0.0 < t_i < 1.0:
        raise ValueError(f"knot {t_i!r} outside (0, 1)")
    z = (t_i - 1.0) / t_i
    base = (1.0 - t_i) ** (n + 1) / (n + 1)
    return np.array([base * t_i ** j * hyp2f1_terminating(j, n + 1, n + 2, z)
                     for j in range(n + 1)])


def v_truncated_pair(n: int, t_j: float, t_i: float) -> float:
    """``<(t - t_j)_+^n, (t - t_i)_+^n>`` for ``t_j <= t_i``."""
    if t_j > t_i:
        raise ValueError("expected t_j <= t_i")
    if not (0.0 < t_j < 1.0 and 0.0 < t_i < 1.0):
        raise ValueError("knots must lie in (0, 1)")
    self_product = (1.0 - t_i) ** (2 * n + 1) / (2 * n + 1)
    return self_product * hyp2f1_terminating(n, -2 * n - 1, -2 * n, (t_i - t_j) / (t_i - 1.0))


def initial_state(n: int) -> TruncatedDualState:
    phi = dual_power_basis(n)
    phi.setflags(write=False)
    lam = np.zeros((0, n + 1))
    lam.setflags(write=False)
    return TruncatedDualState(n, (), phi, lam)


def extend_dual_truncated(state: TruncatedDualState, t_new: float) -> TruncatedDualState:
    """Add ``(t - t_new)_+^n`` to the basis and update every dual function.

    Raises
    ------
    ValueError
        If ``t_new`` is outside (0, 1) or already present.
    ConditioningError
        If the new basis function is numerically dependent on the old ones.
    """
    n = state.n
    t_new = float(t_new)
    if not 0.0 < t_new < 1.0:
        raise ValueError(f"knot {t_new!r} outside (0, 1)")
    if t_new in state.knots:
        raise ValueError(f"knot {t_new!r} already in the basis (multiple knots unsupported)")

    v_mon = v_moment_vector(n, t_new)
    v_knots = np.array([v_truncated_pair(n, min(t, t_new), max(t, t_new)) for t in state.knots])
    v_self = (1.0 - t_new) ** (2 * n + 1) / (2 * n + 1)
    v_old = np.concatenate([v_mon, v_knots])

    # u_j = <(t - t_new)_+^n, d_j> for every existing dual function
    legendre_moments = legendre_power_matrix(n) @ v_mon
    u = state.Psi.T @ legendre_moments + state.Lambda.T @ v_knots

    denom = v_self - v_old @ u
    if abs(denom) < EXTENSION_GUARD * abs(v_self):
        raise ConditioningError(
            f"extension by knot {t_new!r} is numerically degenerate (denominator {denom:.3e})"
        )
    c_new = 1.0 / denom
    c = -v_old * c_new

    psi_col = state.Psi @ c
    lam_col = state.Lambda @ c
    psi = np.hstack([state.Psi - np.outer(psi_col, u), psi_col[:, None]])
    lam_old = np.hstack([state.Lambda - np.outer(lam_col, u), lam_col[:, None]])
    lam_row = np.append(-u * c_new, c_new)
    lam = np.vstack([lam_old, lam_row])

    # keep knots ascending: move the new column and row into place
    knots = state.knots + (t_new,)
    order = np.argsort(knots, kind="stable")
    cols = np.concatenate([np.arange(n + 1), n + 1 + order])
    psi = psi[:, cols]
    lam = lam[order][:, cols]
    psi.setflags(write=False)
    lam.setflags(write=False)
    return TruncatedDualState(n, tuple(knots[k] for k in order), psi, lam)


def build_dual_truncated(n: int, knots) -> TruncatedDualState:
    """Dual truncated power basis for simple knots, built in ascending knot order."""
    knots = [float(t) for t in knots]
    if len(set(knots)) != len(knots):
        raise ValueError("knots must be distinct (multiple knots unsupported)")
    state = initial_state(n)
    for t in sorted(knots):
        state = extend_dual_truncated(state, t)
    return state


def dual_truncated_eval(state: TruncatedDualState, j: int, t):
    """Value of dual function ``j`` at ``t`` in [0, 1]."""
    if not 0 <= j < state.size:
        raise IndexError(f"dual index {j} outside 0..{state.size - 1}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0) or np.any(t_arr > 1.0):
        raise ValueError("parameter outside [0, 1]")
    out = clenshaw_eval(state.Psi[:, j], t_arr)
    for h, knot in enumerate(state.knots):
        out = out + state.Lambda[h, j] * truncated_power_eval(t_arr, knot, state.n)
    return out


def truncated_basis_eval(n: int, knots, t) -> np.ndarray:
    """Matrix ``B[p, i]`` of truncated power basis values at points ``t``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    cols = [t ** j for j in range(n + 1)]
    cols += [truncated_power_eval(t, knot, n) for knot in knots]
    return np.column_stack(cols)
