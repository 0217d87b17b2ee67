# %%
# Co-diagonalizing commuting degenerate matrices
# ==============================================
#
# Two Hermitian matrices can commute and still share no eigenvector that a
# per-matrix eigensolver would find: when both spectra are degenerate, each
# matrix leaves a freedom of basis inside its eigenspaces, and the bases
# printed for one matrix generally are not eigenvectors of the other.
#
# The fix is a matrix pencil: an integer combination a*A + b*B is still
# Hermitian, commutes with both terms, and for generic weights has a simple
# spectrum whose eigenbasis diagonalizes A and B simultaneously.

from qpencil import (
    ExactMatrix,
    GaussianRational,
    commutator_is_zero,
    joint_context,
)
from qpencil.exact import nullspace

first = ExactMatrix.from_rows(
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]
)
second = ExactMatrix.from_rows(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]
)

print("commute:", commutator_is_zero(first, second))

# %%
# Each matrix on its own: both have eigenvalues +1 and -1 with multiplicity
# two. A canonical exact eigenbasis of the first matrix:

for lam in (1, -1):
    shifted = first - ExactMatrix.identity(4).scale(lam)
    for vec in nullspace(shifted):
        print(f"eigenvalue {lam:+d}: ", [str(c) for c in vec])

# %%
# None of those vectors is an eigenvector of the second matrix (apply it and
# compare): the individual eigensystems are useless for joint measurement.


def is_eigenvector(matrix, comps):
    image = matrix.apply(comps)
    pivot = next(i for i, c in enumerate(comps) if not c.is_zero())
    lam = image[pivot] / comps[pivot]
    return all((img - lam * c).is_zero() for img, c in zip(image, comps))


for lam in (1, -1):
    shifted = first - ExactMatrix.identity(4).scale(lam)
    for vec in nullspace(shifted):
        comps = tuple(GaussianRational.coerce(c) for c in vec)
        print("eigenvector of second matrix?", is_eigenvector(second, comps))

# %%
# The pencil 1*first + 2*second has four distinct eigenvalues; its snapped
# and exactly re-verified eigenbasis diagonalizes both matrices at once.

ctx = joint_context([first, second], (1, 2))
print("\npencil eigenvalues:", ctx.pencil_eigenvalues)
for ray, signs in zip(ctx.rays, ctx.eigentable):
    print(f"  ray {ray.to_json()}  first -> {signs[0]:+d}  second -> {signs[1]:+d}")
