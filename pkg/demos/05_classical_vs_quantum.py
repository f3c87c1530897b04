"""The one change that makes a language quantum: signs on the weights.

Classical mode is ordinary probabilistic programming: nonnegative weights
that sum to 1, destructive assignment, rand_bit(). Quantum mode changes
exactly one thing, weights become signed and length-normalized, and
everything else (XOR-assignment, reversibility side conditions,
interference) follows from keeping those weights consistent. The same
two-coin shape behaves completely differently in each mode.
"""

import qppl

corpus = qppl.bundled_programs()

print("Classical: two coin flips, the second overwrites the first.")
print(corpus["classical_coins"])
final = qppl.run_classical(qppl.parse(corpus["classical_coins"]))
for world, prob in sorted(final.distribution().items()):
    print(f"    {qppl.basis_label(world, final.env.n_bits)}: {prob:.6f}")
print("Two flips or one flip, no difference: randomness just overwrites.\n")

print("Quantum: two coin tosses on the same bit undo each other,")
print("and a sign flip in between steers where the cancellation lands.")
print(corpus["interference"])
final = qppl.run(qppl.parse(corpus["interference"]))
for world, prob in sorted(qppl.output_distribution(final).items()):
    print(f"    {qppl.basis_label(world, final.env.n_bits)}: {prob:.6f}")
print()

print("Reversibility is the price of signs. The validator enforces it:")
bad = qppl.parse("def main(x : bit):\n  x ^= x")
for diag in qppl.validate(bad):
    print("   ", diag.render("self_xor.qppl"))
bad = qppl.parse("def main(x : bit):\n  if x == 1:\n    qrand_bit(x)")
for diag in qppl.validate(bad):
    print("   ", diag.render("overwrite_cond.qppl"))
print("Classically both are fine, since nothing needs to be undone:")
ok = qppl.parse("def main(x, y : bit):\n  if x:\n    x := y")
print("    diagnostics in classical mode:", qppl.validate(ok, qppl.CLASSICAL))
