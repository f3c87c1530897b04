"""Seeded random program generation for the property suites.

Programs come out valid by construction: XOR targets never appear in their
own right-hand side, and conditional bodies only assign variables the
condition does not read. Generation weights are fixed here so a seed pins
the whole program.
"""

from __future__ import annotations

import random

from .syntax import (
    And, Assign, Const, Expression, If, Measure, New, Not, Or, Program, QNeg,
    QRand, RandBit, Statement, Var, XorAssign, free_vars,
)

MAX_EXPR_DEPTH = 3
MAX_IF_DEPTH = 2
MAX_IF_BODY = 3

_EXPR_KINDS = ["var"] * 4 + ["const"] + ["not"] * 2 + ["and"] * 2 + ["or"] * 2
_COMP_KINDS = ["xor"] * 4 + ["qrand"] * 3 + ["if"] * 2 + ["qneg"]
_TOP_KINDS = ["comp"] * 6 + ["measure"] + ["new"]
_CLASSICAL_KINDS = ["assign"] * 4 + ["rand_bit"] * 3 + ["if"] * 2


def random_expression(rng: random.Random, names: list[str],
                      depth: int = MAX_EXPR_DEPTH) -> Expression:
    kind = rng.choice(_EXPR_KINDS) if depth > 0 else ("var" if names else "const")
    if kind == "var" and not names:
        kind = "const"
    if kind == "var":
        return Var(rng.choice(names))
    if kind == "const":
        return Const(rng.randint(0, 1))
    if kind == "not":
        return Not(random_expression(rng, names, depth - 1))
    left = random_expression(rng, names, depth - 1)
    right = random_expression(rng, names, depth - 1)
    return And(left, right) if kind == "and" else Or(left, right)


def _random_comp(rng: random.Random, names: list[str], assignable: list[str],
                 if_depth: int) -> Statement:
    kinds = list(_COMP_KINDS)
    if not assignable:
        kinds = [k for k in kinds if k not in ("xor", "qrand")]
    if if_depth <= 0 or not names:
        kinds = [k for k in kinds if k != "if"]
    kind = rng.choice(kinds) if kinds else "qneg"
    if kind == "qneg":
        return QNeg()
    if kind == "qrand":
        return QRand(rng.choice(assignable))
    if kind == "xor":
        target = rng.choice(assignable)
        rhs = random_expression(rng, [n for n in names if n != target])
        return XorAssign(target, rhs)
    cond = random_expression(rng, names, depth=2)
    inner_assignable = [n for n in assignable if n not in free_vars(cond)]
    body = tuple(
        _random_comp(rng, names, inner_assignable, if_depth - 1)
        for _ in range(rng.randint(1, MAX_IF_BODY))
    )
    return If(cond, body)


def random_comp_body(rng: random.Random, names: list[str],
                     n_statements: int) -> list[Statement]:
    """Computational statements only; suited to matrix extraction."""
    return [
        _random_comp(rng, names, list(names), MAX_IF_DEPTH)
        for _ in range(n_statements)
    ]


def random_comp_program(seed: int, n_vars: int, max_statements: int) -> Program:
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(n_vars)]
    body = random_comp_body(rng, names, rng.randint(1, max_statements))
    return Program(tuple(names), tuple(body))


def random_program(seed: int, max_bits: int = 5, max_statements: int = 30) -> Program:
    """Full program with allocation and measurement, optionally a return."""
    rng = random.Random(seed)
    n_inputs = rng.randint(1, min(2, max_bits))
    names = [f"v{i}" for i in range(n_inputs)]
    fresh = n_inputs
    body: list[Statement] = []
    for _ in range(rng.randint(1, max_statements)):
        kind = rng.choice(_TOP_KINDS)
        if kind == "new" and len(names) < max_bits:
            count = rng.randint(1, min(2, max_bits - len(names)))
            allocated = [f"v{fresh + i}" for i in range(count)]
            fresh += count
            body.append(New(tuple(allocated)))
            # Touch the fresh variables so they count as used.
            seed_target = rng.choice(allocated)
            rhs = random_expression(rng, [n for n in names if n != seed_target])
            body.append(XorAssign(seed_target, rhs))
            names.extend(allocated)
        elif kind == "measure":
            chosen = rng.sample(names, rng.randint(1, len(names)))
            body.append(Measure(tuple(chosen)))
        else:
            body.append(_random_comp(rng, names, list(names), MAX_IF_DEPTH))
    returns: tuple[str, ...] | None = None
    if rng.random() < 0.5:
        returns = tuple(n for n in names if rng.random() < 0.7)
    return Program(tuple(f"v{i}" for i in range(n_inputs)), tuple(body), returns)


def _random_classical(rng: random.Random, names: list[str], if_depth: int) -> Statement:
    kinds = list(_CLASSICAL_KINDS)
    if if_depth <= 0:
        kinds = [k for k in kinds if k != "if"]
    kind = rng.choice(kinds)
    if kind == "assign":
        return Assign(rng.choice(names), random_expression(rng, names))
    if kind == "rand_bit":
        return RandBit(rng.choice(names))
    cond = random_expression(rng, names, depth=2)
    body = tuple(
        _random_classical(rng, names, if_depth - 1)
        for _ in range(rng.randint(1, MAX_IF_BODY))
    )
    return If(cond, body)


def random_classical_program(seed: int, max_bits: int = 5,
                             max_statements: int = 20) -> Program:
    rng = random.Random(seed)
    n_vars = rng.randint(1, max_bits)
    names = [f"v{i}" for i in range(n_vars)]
    body = [
        _random_classical(rng, names, MAX_IF_DEPTH)
        for _ in range(rng.randint(1, max_statements))
    ]
    returns: tuple[str, ...] | None = None
    if rng.random() < 0.5:
        returns = tuple(n for n in names if rng.random() < 0.7)
    return Program(tuple(names), tuple(body), returns)
