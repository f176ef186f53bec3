"""Pointwise checks of the Poisson structure on H-orbits in G/K.

The symplectic form on the leaf is never built. Every statement is tested
through ``Pi^sharp = pr_h`` on the cotangent space ``Ad(ha) k`` and through
Iwasawa algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lie_core import (
    exp_g, iwasawa_nak, killing, manin_residuals, numeric_rank, phi, vec, vec_stack,
)

RANK_REL = 1e-9
RANK_GAP = 100.0


class IllConditionedRank(ArithmeticError):
    """Singular values give no clear rank decision; re-sample the point."""


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    h: np.ndarray
    a: np.ndarray
    X: np.ndarray
    point: np.ndarray
    cotangent_basis: np.ndarray


def orbit_point(real, h, X):
    """The point ``h a . K`` with ``a = exp X``; cotangent space ``Ad(ha) k``."""
    X = np.asarray(X, dtype=float)
    a = exp_g(real.a_minus_matrix(X))
    g = np.asarray(h) @ a
    gi = np.linalg.inv(g)
    cot = np.array([g @ Y @ gi for Y in real.basis_k])
    return OrbitPoint(h=np.asarray(h), a=a, X=X, point=g, cotangent_basis=cot)


def sample_h(real, rng, scale=0.7):
    """``exp(Y1) exp(Y2)`` with Y_i Gaussian in ``basis_h`` coordinates."""
    d = len(real.basis_h)
    y1 = np.tensordot(rng.normal(0.0, scale, d), real.basis_h, axes=1)
    y2 = np.tensordot(rng.normal(0.0, scale, d), real.basis_h, axes=1)
    return exp_g(y1) @ exp_g(y2)


def check_manin_triple(real):
    rep = manin_residuals(real)
    rep["dims_add_up"] = rep["dim_h"] + rep["dim_star"] == real.dim_g
    rep["transversal_rank"] = numeric_rank(
        vec_stack(np.concatenate([real.basis_h, real.basis_n])))
    rep["transversal_expected"] = len(real.basis_h) + len(real.basis_n)
    return rep


def pi_sharp(real, pt, covector):
    """``pr_h`` of the covector given in ``pt.cotangent_basis`` coordinates."""
    V = np.tensordot(np.asarray(covector, dtype=float), pt.cotangent_basis, axes=1)
    return real.pr_h(V)


def pairing(X, Y):
    """Im kappa."""
    return float(killing(X, Y).imag)


def _rank_with_gap(M):
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    keep = s > RANK_REL * s[0]
    rank = int(keep.sum())
    if 0 < rank < len(s):
        if s[rank - 1] < RANK_GAP * max(s[rank], 1e-300) and s[rank] > 1e-13 * s[0]:
            raise IllConditionedRank(f"no rank gap: {s[rank - 1]:.3e} vs {s[rank]:.3e}")
    return rank


def leaf_dimensions(real, pt):
    """``(dim Ha.K, rank Pi^sharp)`` at the point, both as tangent dimensions."""
    L = vec_stack(pt.cotangent_basis)
    Q, _ = np.linalg.qr(L.T)
    Q = Q[:, :numeric_rank(L)]
    proj = lambda M: M - (M @ Q) @ Q.T
    orbit = _rank_with_gap(proj(vec_stack(real.basis_h)))
    images = np.array([real.pr_h(V) for V in pt.cotangent_basis])
    leaf = _rank_with_gap(proj(vec_stack(images)))
    return orbit, leaf


def leaf_codimension(real, pt):
    orbit, leaf = leaf_dimensions(real, pt)
    return orbit - leaf


def pi_sharp_antisymmetry(real, pt):
    """Relative residual of ``<pr_h V, W> = -<pr_h W, V>`` over cotangent basis pairs."""
    C = [V / np.linalg.norm(V) for V in pt.cotangent_basis]
    P = [real.pr_h(V) for V in C]
    norms = [np.linalg.norm(x) for x in P]
    worst = 0.0
    for i in range(len(C)):
        for j in range(i, len(C)):
            num = abs(pairing(P[i], C[j]) + pairing(P[j], C[i]))
            worst = max(worst, num / (2 * real.n * (norms[i] + norms[j])))
    return worst


def moment_identity_residual(real, h, a, Z):
    """Residuals of ``pr_h Ad(b) Z = Z`` and ``Ad(b) Z in Z + n``, b = b(ha).

    ``Z`` is a matrix in i a^{-tau}. Returns the larger of the two norms.
    """
    fac = iwasawa_nak(real, np.asarray(h) @ np.asarray(a))
    b = fac.n_part @ fac.a_part
    AdZ = b @ Z @ np.linalg.inv(b)
    r1 = np.linalg.norm(real.pr_h(AdZ) - Z)
    D = AdZ - Z
    r2 = np.linalg.norm(D - real.pr_n(D))
    return float(max(r1, r2))


def fixed_point_check(real, datum, w, X, rng=None, n_t=8):
    """Vertex value and T-fixedness at ``w(a).K``.

    Returns a dict with ``vertex_error`` (|Phi(k_w a k_w^-1) - w(X)|),
    ``t_fixed_error`` (max over sampled t of |b(t k_w a) - b(k_w a)|, relative) and
    ``skipped`` when no representative is available.
    """
    X = np.asarray(X, dtype=float)
    rep = datum.weyl_reps[w] if w < len(datum.weyl_reps) else None
    if rep is None:
        return {"w": w, "skipped": True}
    rng = np.random.default_rng(0) if rng is None else rng
    a = exp_g(real.a_minus_matrix(X))
    target = datum.weyl_elements[w] @ X
    val = phi(real, rep @ a @ np.linalg.inv(rep))
    err = float(np.abs(val - target).max())
    attained = float(np.abs(phi(real, rep @ a) - target).max())
    f0 = iwasawa_nak(real, rep @ a)
    b0 = f0.n_part @ f0.a_part
    bscale = max(1.0, float(np.abs(b0).max()))
    tf = 0.0
    for _ in range(n_t):
        H = real.a_minus_matrix(rng.normal(0.0, 1.0, real.rank_minus))
        t = exp_g(1j * H)
        f = iwasawa_nak(real, t @ rep @ a)
        tf = max(tf, float(np.abs(f.n_part @ f.a_part - b0).max()) / bscale)
    return {
        "w": w,
        "skipped": False,
        "vertex": target.tolist(),
        "phi": val.tolist(),
        "vertex_error": max(err, attained),
        "t_fixed_error": tf,
    }
