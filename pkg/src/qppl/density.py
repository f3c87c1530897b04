"""Independent density-matrix semantics, used to cross-check the engine.

A two-layer state collapses to a single density matrix (branch identity is
forgotten; observationally indistinguishable ensembles coincide). Running
a program directly on density matrices therefore gives a second route to
the same observable statistics: unitaries conjugate the matrix, allocation
embeds it through an isometry, and measurement zeroes the blocks that mix
distinct observed values. Agreement between the two routes is checked
entrywise.
"""

from __future__ import annotations

import numpy as np

from .engine import _measurement_keys, comp_matrix, run
from .state import CapacityError, Environment, to_density
from .syntax import Measure, New, Program, Statement

DENSITY_MAX_BITS = 10


def _project_measurement(rho: np.ndarray, env: Environment, names) -> np.ndarray:
    keys = _measurement_keys(env, names)
    return rho * (keys[:, None] == keys[None, :])


def _embed(rho: np.ndarray, m: int) -> np.ndarray:
    step = 1 << m
    big = np.zeros((rho.shape[0] * step, rho.shape[1] * step))
    big[::step, ::step] = rho
    return big


def _trace_out(rho: np.ndarray, env: Environment, keep: tuple[str, ...]) -> np.ndarray:
    n = env.n_bits
    keep_positions = {env.position(name) for name in keep}
    t = rho.reshape((2,) * (2 * n))
    remaining = n
    for pos in sorted((q for q in range(n) if q not in keep_positions), reverse=True):
        t = np.trace(t, axis1=pos, axis2=pos + remaining)
        remaining -= 1
    dim = 1 << remaining
    return t.reshape(dim, dim)


def run_density(p: Program) -> np.ndarray:
    """Fold a validated program over density matrices.

    Maximal runs of computational statements are conjugated in one step via
    their extracted matrix; new embeds through the zero-initialized
    inclusion; measure applies the projector sum; return measures the
    discarded variables and traces them out (exact, since the matrix is
    block diagonal by then). Dense matrices cap the oracle at 10 bits.
    """
    env = Environment(tuple(p.inputs))
    if env.n_bits > DENSITY_MAX_BITS:
        raise CapacityError(f"density semantics supports at most {DENSITY_MAX_BITS} bits")
    rho = np.zeros((env.dim, env.dim))
    rho[0, 0] = 1.0

    pending: list[Statement] = []

    def flush():
        nonlocal rho
        if pending:
            u = comp_matrix(pending, env)
            rho = u @ rho @ u.T
            pending.clear()

    for stmt in p.body:
        if isinstance(stmt, New):
            flush()
            if env.n_bits + len(stmt.names) > DENSITY_MAX_BITS:
                raise CapacityError(
                    f"density semantics supports at most {DENSITY_MAX_BITS} bits")
            rho = _embed(rho, len(stmt.names))
            env = env.extended(stmt.names)
        elif isinstance(stmt, Measure):
            flush()
            rho = _project_measurement(rho, env, stmt.names)
        else:
            pending.append(stmt)
    flush()

    if p.returns is not None:
        kept = tuple(n for n in env.names if n in set(p.returns))
        discarded = [n for n in env.names if n not in set(p.returns)]
        rho = _project_measurement(rho, env, discarded)
        rho = _trace_out(rho, env, kept)
    return rho


def check_equivalence(p: Program) -> float:
    """Largest entrywise gap between the two semantics of a program."""
    via_branches = to_density(run(p))
    direct = run_density(p)
    return float(np.max(np.abs(via_branches - direct)))
