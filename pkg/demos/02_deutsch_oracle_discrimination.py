"""Deutsch's algorithm: is a one-bit function constant or not?

Classically you must evaluate f twice, at 0 and at 1. Here a coin toss
sets up one world evaluating f(0) and another evaluating f(1); each world
flips its sign when f(x) == 1, and a second coin toss makes the worlds
meet. Equal signs (constant f) cancel on the |1> side, opposite signs
(balanced f) cancel on the |0> side, so the surviving bit answers the
question after a single use of f.
"""

import qppl

ORACLES = {
    "f(x) = 0": "deutsch_const0",
    "f(x) = 1": "deutsch_const1",
    "f(x) = x": "deutsch_identity",
    "f(x) = not x": "deutsch_negation",
}

corpus = qppl.bundled_programs()
for label, name in ORACLES.items():
    program = qppl.parse(corpus[name])
    dist = qppl.output_distribution(qppl.run(program))
    (answer,) = [k for k, v in dist.items() if v > 1e-9]
    verdict = "constant" if answer == 0 else "balanced"
    print(f"{label:14} -> output {answer}  ({verdict})")

print()
print("Exact output distributions (the losing world has weight exactly 0):")
for label, name in ORACLES.items():
    dist = qppl.output_distribution(qppl.run(qppl.parse(corpus[name])))
    print(f"  {label:14} {dist}")
