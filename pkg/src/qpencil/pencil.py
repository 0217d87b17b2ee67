"""Generalized matrix pencils for co-diagonalizing commuting degenerate operators.

A pencil is an integer linear combination sum(a_i * A_i) of pairwise-commuting
Hermitian matrices. With binary-weight coefficients its spectrum separates
every joint sign pattern of the terms, so a single numerical diagonalization
of the pencil exposes the shared eigenbasis. Floating point appears only in
the middle of the pipeline: eigenvectors are snapped to exact integer rays
and every claim (eigenvalues, multiplicities, orthogonality, per-term signs)
is re-verified in exact arithmetic before a context is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exact import (
    ExactMatrix,
    GaussianRational,
    Ray,
    commutator_is_zero,
    inner_product,
    rank,
)

JACOBI_OFF_DIAGONAL_THRESHOLD = 1e-12
JACOBI_MAX_SWEEPS = 100
SNAP_TOLERANCE = 1e-6
DEFAULT_MAX_SNAP_NORM = 4
_EIGENVALUE_INT_TOLERANCE = 1e-6


class PencilError(Exception):
    """Base class for pencil construction and verification failures."""


class DegeneratePencilError(PencilError):
    """The pencil has a repeated eigenvalue; the joint context is not unique.

    Carries the exact multiplicity structure instead of guessing a basis.
    """

    def __init__(self, multiplicities: dict[int, int]):
        self.multiplicities = dict(sorted(multiplicities.items()))
        desc = ", ".join(
            f"{lam} (x{mult})" for lam, mult in self.multiplicities.items()
        )
        super().__init__(f"degenerate pencil spectrum: {desc}")


class SnapError(PencilError):
    """A numerical eigenvector is not near any admissible integer ray."""

    def __init__(self, vector):
        self.vector = np.asarray(vector)
        entries = ", ".join(f"{x:.6g}" for x in self.vector)
        super().__init__(f"cannot snap ({entries}) to a Gaussian-integer ray")


class VerificationError(PencilError):
    """An exact re-check of a numerically obtained quantity failed."""


@dataclass(frozen=True)
class Pencil:
    """Terms A_i with integer coefficients a_i, all validated at build time."""

    terms: tuple[ExactMatrix, ...]
    coefficients: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.terms[0].rows


@dataclass(frozen=True)
class Context:
    """A joint eigenbasis: d mutually orthogonal rays with per-term signs.

    ``eigentable[k][i]`` is the eigenvalue (+1 or -1) of term i on ray k, and
    ``pencil_eigenvalues[k]`` equals sum(coefficients[i] * eigentable[k][i]).
    Rays are ordered by ascending pencil eigenvalue.
    """

    rays: tuple[Ray, ...]
    eigentable: tuple[tuple[int, ...], ...]
    pencil_eigenvalues: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.rays[0].dim

    def to_json(self) -> dict:
        return {
            "rays": [r.to_json() for r in self.rays],
            "eigentable": [list(row) for row in self.eigentable],
            "pencil_eigenvalues": list(self.pencil_eigenvalues),
        }


def default_coefficients(l: int) -> tuple[int, ...]:
    """Binary weights (1, 2, 4, ...): distinct sums over every sign pattern."""
    if l < 1:
        raise ValueError("need at least one term")
    return tuple(2**i for i in range(l))


def build(
    terms: Sequence[ExactMatrix], coefficients: Sequence[int] | None = None
) -> Pencil:
    """Validate terms (square, Hermitian, equal dimension, pairwise commuting)."""
    terms = tuple(terms)
    if not terms:
        raise PencilError("a pencil needs at least one term")
    if coefficients is None:
        coefficients = default_coefficients(len(terms))
    coefficients = tuple(int(c) for c in coefficients)
    if len(coefficients) != len(terms):
        raise PencilError(
            f"{len(terms)} terms but {len(coefficients)} coefficients"
        )
    d = terms[0].rows
    for i, t in enumerate(terms):
        if t.rows != t.cols:
            raise PencilError(f"term {i} is not square")
        if t.rows != d:
            raise PencilError(f"term {i} has dimension {t.rows}, expected {d}")
        if not t.is_hermitian():
            raise PencilError(f"term {i} is not Hermitian")
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            if not commutator_is_zero(terms[i], terms[j]):
                raise PencilError(f"terms {i} and {j} do not commute")
    return Pencil(terms, coefficients)


def evaluate(p: Pencil) -> ExactMatrix:
    """The exact Hermitian sum; commutes with every term by construction."""
    acc = p.terms[0].scale(p.coefficients[0])
    for a, t in zip(p.coefficients[1:], p.terms[1:]):
        acc = acc + t.scale(a)
    for i, t in enumerate(p.terms):
        # guards Pencil values constructed directly, bypassing build()
        if not commutator_is_zero(acc, t):
            raise PencilError(f"pencil does not commute with term {i}")
    return acc


def hermitian_eigensystem(
    m,
    *,
    tol: float = JACOBI_OFF_DIAGONAL_THRESHOLD,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns). Each sweep zeroes
    every off-diagonal pair via an exact 2x2 unitary; sweeps stop when the
    off-diagonal Frobenius norm drops below ``tol``.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("expected a square matrix")
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.conj().T))) > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian to tolerance 1e-12")
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)

    def off_norm():
        return float(np.sqrt(np.sum(np.abs(a - np.diag(np.diag(a))) ** 2)))

    converged = off_norm() <= tol
    for _ in range(max_sweeps):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p, q]
                b = abs(beta)
                if b == 0.0:
                    continue
                # Factor out the phase so the 2x2 block is real symmetric,
                # then apply the stable small-angle rotation formula.
                phase = beta / b
                alpha = a[p, p].real
                gamma = a[q, q].real
                tau = (gamma - alpha) / (2.0 * b)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                u = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]]
                )
                a[:, [p, q]] = a[:, [p, q]] @ u
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                v[:, [p, q]] = v[:, [p, q]] @ u
        converged = off_norm() <= tol
    if not converged:
        raise ArithmeticError(
            f"Jacobi iteration did not converge within {max_sweeps} sweeps"
        )
    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def snap_to_ray(
    vector,
    *,
    max_snap_norm: int = DEFAULT_MAX_SNAP_NORM,
    tol: float = SNAP_TOLERANCE,
) -> Ray:
    """Round a numerical eigenvector to the exact integer ray it approximates.

    Divides by the largest-magnitude entry (fixing scale and global phase),
    then looks for the smallest integer multiplier k <= max_snap_norm under
    which every entry sits within ``tol`` of a Gaussian integer. The result
    is only trusted after the caller's exact re-verification.
    """
    v = np.asarray(vector, dtype=complex)
    lead = int(np.argmax(np.abs(v)))
    if abs(v[lead]) == 0.0:
        raise SnapError(v)
    w = v / v[lead]
    for k in range(1, max_snap_norm + 1):
        scaled = w * k
        re = np.round(scaled.real).astype(int)
        im = np.round(scaled.imag).astype(int)
        if float(np.max(np.abs(scaled - (re + 1j * im)))) <= tol:
            return Ray(
                [GaussianRational(int(a), int(b)) for a, b in zip(re, im)]
            )
    raise SnapError(v)


def _exact_integer_spectrum(p_exact: ExactMatrix, approx: np.ndarray) -> dict[int, int]:
    """Round the float spectrum to integers and certify it exactly.

    Each candidate eigenvalue is confirmed (and its multiplicity counted) via
    the exact rank of P - lambda*I, so floats only ever suggest candidates.
    """
    d = p_exact.rows
    candidates = sorted(set(int(round(x)) for x in approx))
    for x in approx:
        if abs(x - round(x)) > _EIGENVALUE_INT_TOLERANCE:
            raise VerificationError(
                f"pencil eigenvalue {x!r} is not near an integer; integer "
                "coefficients over dichotomic terms should give an integer spectrum"
            )
    multiplicities = {}
    total = 0
    ident = ExactMatrix.identity(d)
    for lam in candidates:
        mult = d - rank(p_exact - ident.scale(lam))
        if mult == 0:
            raise VerificationError(
                f"rounded value {lam} is not an exact eigenvalue of the pencil"
            )
        multiplicities[lam] = mult
        total += mult
    if total != d:
        raise VerificationError(
            f"certified multiplicities sum to {total}, expected {d}"
        )
    return multiplicities


def _exact_unit_eigenvalue(matrix: ExactMatrix, ray: Ray) -> int:
    """The eigenvalue (+1 or -1) of a dichotomic operator on an exact ray."""
    comps = ray.components
    image = matrix.apply(comps)
    for sign in (1, -1):
        if all((img - GaussianRational(sign) * c).is_zero() for img, c in zip(image, comps)):
            return sign
    raise VerificationError(
        f"{ray!r} is not a +/-1 eigenvector of the given operator"
    )


def joint_context(
    terms: Sequence[ExactMatrix],
    coefficients: Sequence[int] | None = None,
    *,
    max_snap_norm: int = DEFAULT_MAX_SNAP_NORM,
) -> Context:
    """Full pipeline: build, diagonalize, snap, and exactly verify a context.

    Raises DegeneratePencilError (with the certified multiplicity structure)
    when the pencil cannot single out a basis, SnapError when an eigenvector
    is not an integer ray, and VerificationError when any exact re-check
    fails.
    """
    p = build(terms, coefficients)
    p_exact = evaluate(p)
    eigenvalues, eigenvectors = hermitian_eigensystem(p_exact.to_complex_array())
    multiplicities = _exact_integer_spectrum(p_exact, eigenvalues)
    if any(m > 1 for m in multiplicities.values()):
        raise DegeneratePencilError(multiplicities)

    spectrum = sorted(multiplicities)
    rays = []
    for k, lam in enumerate(spectrum):
        ray = snap_to_ray(eigenvectors[:, k], max_snap_norm=max_snap_norm)
        comps = ray.components
        image = p_exact.apply(comps)
        if any(
            not (img - GaussianRational(lam) * c).is_zero()
            for img, c in zip(image, comps)
        ):
            raise VerificationError(
                f"snapped ray {ray!r} is not an exact eigenvector of the "
                f"pencil for eigenvalue {lam}"
            )
        rays.append(ray)

    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if not inner_product(rays[i], rays[j]).is_zero():
                raise VerificationError(
                    f"context rays {i} and {j} are not exactly orthogonal"
                )

    eigentable = []
    for ray, lam in zip(rays, spectrum):
        signs = tuple(_exact_unit_eigenvalue(t, ray) for t in p.terms)
        if sum(a * s for a, s in zip(p.coefficients, signs)) != lam:
            raise VerificationError(
                "per-term signs do not recombine to the pencil eigenvalue"
            )
        eigentable.append(signs)

    return Context(tuple(rays), tuple(eigentable), tuple(spectrum))
