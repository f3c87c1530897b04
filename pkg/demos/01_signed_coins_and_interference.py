"""Signed coin tosses and destructive interference.

The only non-classical primitive in the language is qrand_bit(x): a coin
toss whose outcomes carry signed weights (amplitudes). On x = 0 it splits
a world into two with weights +1/sqrt2 and +1/sqrt2; on x = 1 the second
weight is negative. When two worlds evolve to the same memory contents,
their weights add, so opposite signs cancel and that outcome is never
observed. This script walks through the cancellation step by step.
"""

import qppl

SOURCE = qppl.bundled_programs()["interference"]
print(SOURCE)

program = qppl.parse(SOURCE)
assert qppl.validate(program) == []


def show(label, state):
    print(label if label else "start")
    for b in state.branches:
        worlds = " + ".join(
            f"{b.amps[k]:+.4f}|{qppl.basis_label(int(k), state.env.n_bits)}>"
            for k in range(state.env.dim) if b.amps[k] != 0
        )
        print(f"    p={b.p:.4f}:  {worlds}")


final = qppl.run(program, observer=show)

print()
print("The two |00> histories arrive with weights +1/2 and -1/2 and cancel;")
print("only |11> survives:")
for world, prob in sorted(qppl.output_distribution(final).items()):
    print(f"    {qppl.basis_label(world, final.env.n_bits)}: {prob:.6f}")
