"""Build a rank-2 basis and print a few elements and eigenvalues."""
from gmacdonald.gmp import build_gmp
from gmacdonald.operators import WeightVector

B = build_gmp(2, WeightVector.from_Q(), 2)
for lam in B.labels():
    print(f"P{lam} =")
    for mono, c in sorted(B.element(lam).terms.items()):
        print(f"    {c}  *  p{mono}")
    print(f"    x0+ eigenvalue: {B.eig_plus(lam)}")
