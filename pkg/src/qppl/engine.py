"""Execution of validated programs under the two-layer semantics.

Computational statements act linearly on each branch's amplitude vector
and never touch the classical layer. ``if`` is applied by masking: the
body's action runs on the worlds where the condition holds and the rest
pass through untouched, which is exactly the block form of the statement's
matrix without ever materializing it. Measurement splits each branch into
one branch per observed value, squaring the amplitude mass into classical
probability. Returning measures the discarded variables first and then
drops their (now definite) bit positions.

Runs are deterministic; sampling happens only when rendering output.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .syntax import (
    And, Assign, Const, Expression, If, Measure, New, Not, Or, Program, QNeg,
    QRand, RandBit, Statement, Var, XorAssign, statement_source,
)
from .state import (
    Branch, CapacityError, Environment, PRUNE_EPS, TwoLayerState,
    assert_valid_state, extend, initial_state, prune_branches,
)

COMP_MATRIX_MAX_BITS = 10

_SQRT_HALF = 1.0 / np.sqrt(2.0)

Observer = Callable[[str, TwoLayerState], None]


def eval_expr(e: Expression, basis: int, env: Environment) -> int:
    """Evaluate a boolean expression in one world."""
    if isinstance(e, Var):
        return env.bit(basis, e.name)
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Not):
        return 1 - eval_expr(e.operand, basis, env)
    if isinstance(e, And):
        return eval_expr(e.left, basis, env) & eval_expr(e.right, basis, env)
    if isinstance(e, Or):
        return eval_expr(e.left, basis, env) | eval_expr(e.right, basis, env)
    raise TypeError(f"not an expression: {e!r}")


def truth_table(e: Expression, env: Environment) -> np.ndarray:
    """Boolean value of the expression in every world, as a 0/1 array."""
    idx = np.arange(env.dim)
    def rec(node) -> np.ndarray:
        if isinstance(node, Var):
            return (idx >> env.shift(node.name)) & 1
        if isinstance(node, Const):
            return np.full(env.dim, node.value, dtype=np.int64)
        if isinstance(node, Not):
            return 1 - rec(node.operand)
        if isinstance(node, And):
            return rec(node.left) & rec(node.right)
        if isinstance(node, Or):
            return rec(node.left) | rec(node.right)
        raise TypeError(f"not an expression: {node!r}")
    return rec(e)


# ---------------------------------------------------------------------------
# Branch-level actions
# ---------------------------------------------------------------------------

def _vec_qrand(amps: np.ndarray, shift: int) -> np.ndarray:
    bit = 1 << shift
    idx = np.arange(len(amps))
    lo = idx[(idx & bit) == 0]
    hi = lo | bit
    out = np.empty_like(amps)
    out[lo] = (amps[lo] + amps[hi]) * _SQRT_HALF
    out[hi] = (amps[lo] - amps[hi]) * _SQRT_HALF
    return out


def _vec_xor(amps: np.ndarray, shift: int, rhs_bits: np.ndarray) -> np.ndarray:
    # The permutation k -> k XOR (rhs << shift) is an involution because the
    # right-hand side never reads the target bit.
    idx = np.arange(len(amps))
    return amps[idx ^ (rhs_bits << shift)]


def apply_comp_to_vector(amps: np.ndarray, stmt: Statement, env: Environment) -> np.ndarray:
    if isinstance(stmt, QRand):
        return _vec_qrand(amps, env.shift(stmt.target))
    if isinstance(stmt, QNeg):
        return -amps
    if isinstance(stmt, XorAssign):
        return _vec_xor(amps, env.shift(stmt.target), truth_table(stmt.rhs, env))
    if isinstance(stmt, If):
        mask = truth_table(stmt.cond, env).astype(float)
        if amps.ndim == 2:  # stack of column vectors; mask rows
            mask = mask[:, None]
        inside = amps * mask
        for inner in stmt.body:
            inside = apply_comp_to_vector(inside, inner, env)
        return inside + amps * (1.0 - mask)
    if isinstance(stmt, (Assign, RandBit)):
        raise ValueError(f"classical statement in a quantum run: {statement_source(stmt)}")
    raise TypeError(f"not a computational statement: {stmt!r}")


def _map_branches(state: TwoLayerState, f) -> TwoLayerState:
    return TwoLayerState(state.env, [Branch(b.p, f(b.amps)) for b in state.branches])


def apply_qrand(state: TwoLayerState, target: str) -> TwoLayerState:
    shift = state.env.shift(target)
    return _map_branches(state, lambda a: _vec_qrand(a, shift))


def apply_qneg(state: TwoLayerState) -> TwoLayerState:
    return _map_branches(state, lambda a: -a)


def apply_xor_assign(state: TwoLayerState, target: str, rhs: Expression) -> TwoLayerState:
    shift = state.env.shift(target)
    rhs_bits = truth_table(rhs, state.env)
    return _map_branches(state, lambda a: _vec_xor(a, shift, rhs_bits))


def apply_if(state: TwoLayerState, cond: Expression,
             body: Sequence[Statement]) -> TwoLayerState:
    stmt = If(cond, tuple(body))
    return _map_branches(state, lambda a: apply_comp_to_vector(a, stmt, state.env))


# ---------------------------------------------------------------------------
# Measurement, allocation, return
# ---------------------------------------------------------------------------

def _measurement_keys(env: Environment, names: Sequence[str]) -> np.ndarray:
    """Observed value of the measured variables in every world.

    Bits are packed in environment order, earliest declared variable most
    significant, matching the order used for projector construction.
    """
    ordered = [n for n in env.names if n in set(names)]
    idx = np.arange(env.dim)
    keys = np.zeros(env.dim, dtype=np.int64)
    m = len(ordered)
    for i, name in enumerate(ordered):
        keys |= ((idx >> env.shift(name)) & 1) << (m - 1 - i)
    return keys


def apply_measure(state: TwoLayerState, names: Sequence[str]) -> TwoLayerState:
    """Split branches by observed value, converting amplitude mass to probability.

    Each branch j becomes one branch per value y with probability
    p_j * Q_jy**2, where Q_jy**2 is the squared amplitude mass of the worlds
    showing y; their amplitudes are rescaled by 1/Q_jy. Zero-mass outcomes
    are dropped. New branches are ordered by (parent branch, y ascending).
    """
    names = tuple(names)
    missing = set(names) - set(state.env.names)
    if missing:
        raise KeyError(f"cannot measure undeclared variables: {sorted(missing)}")
    if len(set(names)) != len(names):
        raise ValueError("measured variables must be distinct")
    keys = _measurement_keys(state.env, names)
    new_branches: list[Branch] = []
    for b in state.branches:
        mass = np.bincount(keys, weights=b.amps * b.amps)
        for y in np.flatnonzero(mass > 0):
            q2 = mass[y]
            p = b.p * q2
            if p <= PRUNE_EPS:
                continue
            amps = np.where(keys == y, b.amps, 0.0) / np.sqrt(q2)
            new_branches.append(Branch(p, amps))
    return TwoLayerState(state.env, prune_branches(new_branches))


def apply_new(state: TwoLayerState, names: Sequence[str]) -> TwoLayerState:
    return extend(state, names)


def apply_return(state: TwoLayerState, returns: Sequence[str]) -> TwoLayerState:
    """Measure everything not returned, then delete those bit positions.

    After the measurement each branch holds a definite value on the
    discarded variables, so deletion is an exact re-indexing. The surviving
    environment lists the returned variables in declaration order.
    """
    returns = tuple(returns)
    missing = set(returns) - set(state.env.names)
    if missing:
        raise KeyError(f"cannot return undeclared variables: {sorted(missing)}")
    kept = tuple(n for n in state.env.names if n in set(returns))
    discarded = [n for n in state.env.names if n not in set(returns)]
    measured = apply_measure(state, discarded)

    k = len(kept)
    ret_idx = np.arange(1 << k)
    gather = np.zeros(1 << k, dtype=np.int64)
    for i, name in enumerate(kept):
        gather |= ((ret_idx >> (k - 1 - i)) & 1) << state.env.shift(name)
    discard_mask = 0
    for name in discarded:
        discard_mask |= 1 << state.env.shift(name)

    env = Environment(kept)
    branches = []
    for b in measured.branches:
        support = np.flatnonzero(b.amps)
        fixed = int(support[0]) & discard_mask
        branches.append(Branch(b.p, b.amps[gather | fixed]))
    return TwoLayerState(env, branches)


# ---------------------------------------------------------------------------
# Whole-program execution
# ---------------------------------------------------------------------------

def _apply_statement(state: TwoLayerState, stmt: Statement) -> TwoLayerState:
    if isinstance(stmt, New):
        return apply_new(state, stmt.names)
    if isinstance(stmt, Measure):
        return apply_measure(state, stmt.names)
    env = state.env
    return TwoLayerState(env, [
        Branch(b.p, apply_comp_to_vector(b.amps, stmt, env)) for b in state.branches
    ])


def run(p: Program, *, observer: Observer | None = None,
        check_invariants: bool = False) -> TwoLayerState:
    """Execute a validated program and return its final two-layer state.

    The observer, if given, is called with ("", initial state) and then
    (statement text, state) after every top-level statement, including the
    final return.
    """
    state = initial_state(p.inputs)
    if observer:
        observer("", state)
    for stmt in p.body:
        state = _apply_statement(state, stmt)
        if check_invariants:
            assert_valid_state(state)
        if observer:
            observer(statement_source(stmt), state)
    if p.returns is not None:
        state = apply_return(state, p.returns)
        if check_invariants:
            assert_valid_state(state)
        if observer:
            suffix = " " + ", ".join(p.returns) if p.returns else ""
            observer(f"return{suffix}", state)
    return state


def comp_matrix(body: Sequence[Statement], env: Environment) -> np.ndarray:
    """Matrix of a computational-statement sequence.

    Column k is the result of running the body on basis state k; all
    columns are advanced together. A test and oracle utility, capped at
    10 bits since the matrix is dense.
    """
    if env.n_bits > COMP_MATRIX_MAX_BITS:
        raise CapacityError(
            f"comp_matrix supports at most {COMP_MATRIX_MAX_BITS} bits, got {env.n_bits}")
    matrix = np.eye(env.dim)
    for stmt in body:
        matrix = apply_comp_to_vector(matrix, stmt, env)
    return matrix
