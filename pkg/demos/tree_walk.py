"""
Walking the dyadic tree
=======================

Nodes, the breadth-first enumeration, segments and branches.
"""

from jamestree import (
    BranchPrefix,
    NodeId,
    Segment,
    disjoint,
    enumerate_nodes,
    index_of,
    node_at,
    successor,
)

# the enumeration starts at the root and sweeps each level left to right
print("first ten nodes:", [str(t) or "(root)" for t in enumerate_nodes(10)])

# node_at and index_of are inverse; levels grow like floor(log2 n)
for n in (1, 2, 3, 7, 12, 100):
    t = node_at(n)
    print(f"t_{n} = {str(t)!r}  level {t.level}  index back = {index_of(t)}")

# successor implements the same order one step at a time
t = NodeId.parse("11")
print("after 11 comes", str(successor(t)))  # rolls over to 000

# a segment is the piece of a chain between two comparable nodes
seg = Segment.parse("0..010")
print("segment", seg, "holds", [str(s) for s in seg.nodes()])

# a branch fixes a direction forever; the pattern's last bit repeats
branch = BranchPrefix(NodeId.parse("0"), (1, 0))
print("branch", branch, "passes through", [str(branch.node_at_level(k)) for k in range(1, 6)])

# disjointness is what the norm's families are built from
print("0..010 vs branch:", "disjoint" if disjoint(seg, branch) else "they meet")
print("0..010 vs 1..11: ", "disjoint" if disjoint(seg, Segment.parse("1..11")) else "they meet")
