"""Bloch cubes, the CSIGN coefficient map, and why the clean gate breaks
the cube picture.

Restricting a qubit to X, Y, Z measurements enlarges the valid state set
from the Bloch sphere to a cube with corners (+-1, +-1, +-1).  This script
walks through the coefficient-matrix representation, the CSIGN action, and
the negative probability that rules out the noiseless gate.

Run:  python demos/01_bloch_cubes_and_csign.py
"""
import numpy as np

from gencube import (
    BlochOp,
    StateSpaceSpec,
    born_probability,
    contains,
    csign,
    cube_vertices,
    product,
    single_born,
)

print("=" * 70)
print("Cube corners attain every deterministic X/Y/Z outcome pattern")
print("=" * 70)
for v in cube_vertices():
    outcomes = [int(2 * single_born(v, ax, 1) - 1) for ax in "XYZ"]
    print(f"  corner {tuple(int(x) for x in v.bloch)} -> X,Y,Z outcomes {outcomes}")

t_state = BlochOp(np.ones(3) / np.sqrt(3))
print(f"\nmagic T state in cube(1):   {contains(StateSpaceSpec.cube(1.0), t_state)}")
print(f"cube corner in sphere(1):   {contains(StateSpaceSpec.sphere(1.0), BlochOp(np.ones(3)))}")

print("\n" + "=" * 70)
print("CSIGN on a product of cube corners, in the Pauli coefficient matrix")
print("=" * 70)
u = BlochOp(np.array([1.0, 1.0, 1.0]))
v = BlochOp(np.array([1.0, 1.0, -1.0]))
A = product(u, v)
out = csign(A)
print("input coefficients (rows: I,X,Y,Z of particle 1):")
print(A.coeffs)
print("output coefficients:")
print(out.coeffs)

p = born_probability(out, "X", 1, "X", -1)
print(f"\nP(X=+1, X=-1) on the output = {p}")
print("A negative 'probability': the noiseless CSIGN is not even a valid")
print("operation on the cubes, so it certainly cannot be cube-separable.")
