"""Allocation, return, and why discarding behaves like measurement.

new brings in fresh zero bits. return keeps only the listed variables;
everything else is implicitly measured and then deleted, because a
discarded bit whose value differs across worlds pins those worlds apart
forever, exactly as if someone had looked at it. Cleaning temporaries to
a world-uniform value first (uncomputation) avoids the damage.
"""

import qppl

print(qppl.bundled_programs()["alloc_return"])
final = qppl.run(qppl.parse(qppl.bundled_programs()["alloc_return"]))
print("returned variables:", final.env.names)
for world, prob in sorted(qppl.output_distribution(final).items()):
    print(f"    y = {qppl.basis_label(world, final.env.n_bits)}: {prob:.6f}")
print()

print("Discarding half of a correlated pair destroys the superposition:")
entangled = qppl.parse(
    "def main(x, y : bit):\n"
    "  qrand_bit(x)\n"
    "  y ^= x\n"
    "  return x\n"
)
final = qppl.run(entangled)
print("after return x, the state is a classical mixture:")
for b in final.branches:
    print(f"    p={b.p:.2f}: amplitudes {[round(float(a), 6) for a in b.amps]}")
print()

print("Uncomputing y first (XOR by the same expression) keeps x quantum:")
uncomputed = qppl.parse(
    "def main(x, y : bit):\n"
    "  qrand_bit(x)\n"
    "  y ^= x\n"
    "  y ^= x\n"
    "  return x\n"
)
final = qppl.run(uncomputed)
for b in final.branches:
    print(f"    p={b.p:.2f}: amplitudes {[round(float(a), 6) for a in b.amps]}")
print("One branch, still in superposition: interference remains available.")
