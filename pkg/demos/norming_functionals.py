"""
Functionals that attain the norm
================================

Interval functionals sum coordinates over a segment or branch.  An
optimal disjoint family turns into a norming element whose squared
evaluation equals the squared norm, with no square root ever taken.
"""

from fractions import Fraction

from jamestree import (
    JTVector,
    NodeId,
    Segment,
    basis_vector,
    branch_through,
    eval_interval,
    eval_kstar,
    eval_kstar_squared,
    jt_norm,
    norming_functional,
    separation_witness,
)

x = JTVector.from_entries({"": 1, "0": Fraction(-5, 2), "01": 3})

# a single interval functional has operator norm 1
seg = Segment.parse("0..01")
print("F*([0..01]) applied to x:", eval_interval(seg, x))

# the norming element weights each witness segment by its own sum
k = norming_functional(x)
print("terms:", [(str(w), str(iv)) for w, iv in k.terms])
print("scale_squared:", k.scale_squared)

norm_sq = jt_norm(x).value_squared
print("eval^2 =", eval_kstar_squared(k, x), "  ||x||^2 =", norm_sq)
assert eval_kstar_squared(k, x) == norm_sq

# the unscaled evaluation is the norm itself, computed in binary64
print("eval   ~", round(eval_kstar(k, x), 6), " vs sqrt:", round(norm_sq ** 0.5, 6))

# two branches that part ways are separated by a single basis vector
p, q = NodeId.parse("0110"), NodeId.parse("0101")
s = separation_witness(p, q)
print("branches through", str(p), "and", str(q), "part at", str(s))
e_s = basis_vector(s)
print(
    "difference on e_s:",
    eval_interval(branch_through(p), e_s) - eval_interval(branch_through(q), e_s),
)
