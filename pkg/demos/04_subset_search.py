# %%
# Searching sub-collections for minimal no-state configurations
# =============================================================
#
# The 24-context configuration admits no two-valued state. Which parts of
# it are responsible? Sweeping every nonempty sub-collection of contexts
# finds all no-state subsets; the minimal ("critical") ones are those that
# regain a state as soon as any single context is dropped.
#
# The full 2^24-1 sweep takes a few minutes (run it via
# ``qpencil subsets --critical --jobs 4`` or pass --full here); this demo
# sweeps a 12-context sub-hypergraph by default.

import sys

from qpencil import ContextHypergraph, joint_context, noncolorable_subsets
from qpencil import parse_pauli, realization

lines = [
    ("ZI", "IZ", "ZZ"), ("IX", "XI", "XX"), ("ZX", "XZ", "YY"),
    ("ZI", "IX", "ZX"), ("IZ", "XI", "XZ"), ("ZZ", "XX", "YY"),
]
rays = []
for words in lines:
    ctx = joint_context([realization(parse_pauli(w)) for w in words], (1, 2, 4))
    rays.extend(ctx.rays)
h = ContextHypergraph.completion_of(rays)

if "--full" in sys.argv:
    target, jobs = h, 2
else:
    # eleven contexts that happen to contain one minimal no-state collection
    picks = [1, 2, 6, 7, 8, 13, 17, 19, 20, 0, 5]
    target, jobs = h.sub_hypergraph(sorted(picks)), 1
    print("sweeping 11 of the 24 contexts (pass --full for all 24)\n")

result = noncolorable_subsets(target, jobs=jobs)
print(f"contexts: {len(target.edges)}")
print(f"no-state sub-collections: {result.total}")
print(f"critical sub-collections: {len(result.critical)}")

# %%
# Shape of each critical collection: how many contexts it keeps and how
# many rays those contexts cover. In the full sweep the smallest ones keep
# 9 contexts covering 18 rays.

tally = {}
for shape in result.critical_shapes(target):
    tally[shape] = tally.get(shape, 0) + 1
for (edges, vertices), count in sorted(tally.items()):
    print(f"  {edges} contexts / {vertices} rays: {count}")
