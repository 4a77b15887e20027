"""The magic-basis Choi channel: a noisy gate that is almost cube-separable
yet quantum-entangling, and the error-per-gate bounds.

The two-term Choi state built from |T> and |Tbar> defines a trace
preserving channel whose outputs hug mixtures of T(x)T and T(x)Tbar.  With
the mixing imbalance eps > 0 it entangles certain quantum product inputs
(non-PPT outputs) while staying exactly on the cube-separability edge:
the two cube corners conjugate-aligned with the T axis acquire a Born
probability of -eps/3.

Run:  python demos/04_magic_channel.py
"""

from gencube.constructions import error_per_gate_bounds, lemma8_report

print("=" * 70)
print("Channel checks at alpha = 0.998, eps = 5e-4")
print("=" * 70)
rep = lemma8_report(0.998, 5e-4)
for line in rep.as_lines():
    print("  " + line)
print(f"  failing inputs: {rep.infeasible_inputs[:2]} ... "
      f"({len(rep.infeasible_inputs)} total)")

print("""
The 16 failures all have the first particle at +-(1,-1,1): the channel
measures its input along the transposed T axis, and exactly those corners
land on the cube boundary, where the eps imbalance tips one Pauli outcome
negative (by eps/3).  Shrinking eps restores feasibility but also shrinks
the entangling power (min PT eigenvalue ~ -1.24 eps), so the two
requirements never hold together at the working tolerances.
""")

print("=" * 70)
print("Error-per-gate bounds for the adversarial noise model")
print("=" * 70)
epg = error_per_gate_bounds()
print(f"  lower bound (magic-basis argument):  {epg.lower}")
print(f"  corner = wT - (w-1)Tbar residual:    {epg.w_identity_residual:.2e}")
print(f"  w^2 + (w-1)^2:                       {epg.w_square_identity}")
print(f"  50% one-arm dephasing construction:  {epg.upper_feasible_count}/64 "
      "vertex inputs cube-separable")
