"""Measurement converts quantum uncertainty into classical uncertainty.

A running program is described on two levels: branches of signed
amplitudes (quantum, can interfere) under a classical probability
distribution (cannot interfere). Measuring a variable regroups each
branch's worlds by the observed value and promotes their squared
amplitude mass to classical branch probability. Nothing about the bits
changes; the program only loses future chances of cancellation.
"""

import numpy as np

import qppl

print("Coin, measure, coin, coin:")
print(qppl.bundled_programs()["measure_branching"])

program = qppl.parse(qppl.bundled_programs()["measure_branching"])
states = []
qppl.run(program, observer=lambda _, st: states.append(st))

labels = [
    "start",
    "after the first coin  (one branch, two worlds)",
    "after measure         (two branches, definite worlds)",
    "after the second coin (each branch superposed again)",
    "after the third coin  (each branch cancels on its own)",
]
for label, st in zip(labels, states):
    rows = "; ".join(
        f"p={b.p:.2f}: [{', '.join(f'{a:+.3f}' for a in b.amps)}]" for b in st.branches
    )
    print(f"  {label:<55} {rows}")

print()
print("Branches never interfere with each other. Without the measurement the")
print("same three coin tosses leave genuine quantum uncertainty instead:")
unmeasured = qppl.parse(
    "def main(x : bit):\n  qrand_bit(x)\n  qrand_bit(x)\n  qrand_bit(x)\n"
)
final = qppl.run(unmeasured)
for b in final.branches:
    print(f"  p={b.p:.2f}: amplitudes {np.round(b.amps, 6)}")
print("One branch in superposition, versus the measured run's classical mix.")
