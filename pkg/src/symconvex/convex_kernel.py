"""Convex geometry of the claimed moment image conv(W.X) + Gamma.

Two independent membership oracles are provided:

* :func:`membership_minkowski` works on the V-representation (vertices plus
  recession generators) through one LP;
* :func:`membership_intersection` intersects the local cones at the Weyl
  vertices, one LP per cone.

All distances are L1 distances in a^{-tau} coordinates, obtained from LPs
solved by the in-house simplex kernel.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels


class Verdict(str, Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True, eq=False)
class MomentImageModel:
    base_point: np.ndarray
    vertices: np.ndarray        # (k, r)
    cone_gens: np.ndarray       # (m, r)
    tol: float = 1e-8
    weyl_index: tuple = ()      # for each vertex, one Weyl element producing it

    @property
    def dim(self):
        return len(self.base_point)

    def to_dict(self):
        return {
            "base_point": self.base_point.tolist(),
            "vertices": self.vertices.tolist(),
            "cone_generators": self.cone_gens.tolist(),
            "tol": self.tol,
        }


@dataclass(frozen=True, eq=False)
class LocalCone:
    apex: np.ndarray
    generators: np.ndarray      # (m, r), possibly m = 0
    weyl_index: int = -1


@dataclass(eq=False)
class Membership:
    verdict: Verdict
    slack: float                            # L1 distance to the set (0 when inside)
    weights: np.ndarray | None = None       # convex weights on vertices
    cone_weights: np.ndarray | None = None  # nonnegative weights on generators
    separator: np.ndarray | None = None     # phi with phi(y) > max phi(v_i), phi(g_j) <= 0
    failing: list = field(default_factory=list)

    @property
    def inside(self):
        return self.verdict is Verdict.INSIDE


def _as_rows(vs, r):
    a = np.asarray(vs, dtype=float)
    return a.reshape(-1, r) if a.size else np.zeros((0, r))


def cluster_points(points, tol):
    """Merge points closer than ``tol`` (max-norm); returns (unique, first_index)."""
    uniq, idx = [], []
    for i, p in enumerate(points):
        if not any(np.abs(p - u).max() <= tol for u in uniq):
            uniq.append(p)
            idx.append(i)
    return np.array(uniq), idx


def build_model(datum, X, tol=1e-8):
    """Vertices ``{w(X)}`` (merged) and generators ``{-H_beta : beta in Delta^+_-}``."""
    from .restricted_roots import cone_generators

    X = np.asarray(X, dtype=float)
    r = len(X)
    if r != datum.rank:
        raise ValueError(f"base point has {r} coordinates, expected {datum.rank}")
    orbit = [W @ X for W in datum.weyl_elements]
    verts, idx = cluster_points(orbit, max(tol, 1e-12 * max(1.0, np.abs(X).max())))
    gens = _as_rows(cone_generators(datum), r)
    return MomentImageModel(base_point=X, vertices=verts.reshape(-1, r), cone_gens=gens,
                            tol=tol, weyl_index=tuple(idx))


def _classify(slack, tol, band):
    if not np.isfinite(slack):
        return Verdict.INDETERMINATE
    if slack <= tol:
        return Verdict.INSIDE
    if slack <= band:
        return Verdict.BOUNDARY
    return Verdict.OUTSIDE


def distance_to_hull_plus_cone(y, vertices, gens):
    """L1 distance from ``y`` to conv(vertices) + cone(gens) via one LP.

    Returns ``(dist, lam, mu, phi)``; ``phi`` is the optimal dual functional
    with ``||phi||_inf <= 1``, ``phi(y) - max phi(v) = dist`` and ``phi(g) <= 0``.
    """
    y = np.asarray(y, dtype=float)
    r = len(y)
    V = _as_rows(vertices, r)
    G = _as_rows(gens, r)
    k, m = len(V), len(G)
    I = np.eye(r)
    top = np.hstack([V.T, G.T, I, -I])
    bottom = np.concatenate([np.ones(k), np.zeros(m + 2 * r)])[None, :]
    A = np.vstack([top, bottom])
    b = np.concatenate([y, [1.0]])
    c = np.concatenate([np.zeros(k + m), np.ones(2 * r)])
    status, x, dual, obj = _kernels.simplex_solve(A, b, c)
    if status != _kernels.OPTIMAL:
        return np.inf, None, None, None
    return max(obj, 0.0), x[:k], x[k:k + m], dual[:r]


def distance_to_cone(v, gens):
    """L1 distance from ``v`` to cone(gens); returns ``(dist, mu)``."""
    v = np.asarray(v, dtype=float)
    r = len(v)
    G = _as_rows(gens, r)
    m = len(G)
    if m == 0:
        return float(np.abs(v).sum()), np.zeros(0)
    I = np.eye(r)
    A = np.hstack([G.T, I, -I])
    c = np.concatenate([np.zeros(m), np.ones(2 * r)])
    status, x, _, obj = _kernels.simplex_solve(A, v, c)
    if status != _kernels.OPTIMAL:
        return np.inf, None
    return max(obj, 0.0), x[:m]


def membership_minkowski(y, model, band=None):
    """Is ``y`` in conv(vertices) + cone(gens)?  Tri-state with certificate."""
    tol = model.tol
    band = 10 * tol if band is None else band
    dist, lam, mu, phi = distance_to_hull_plus_cone(y, model.vertices, model.cone_gens)
    verdict = _classify(dist, tol, band)
    if verdict is Verdict.INDETERMINATE:
        return Membership(verdict, np.inf)
    if verdict is Verdict.INSIDE:
        return Membership(verdict, dist, weights=lam, cone_weights=mu)
    return Membership(verdict, dist, weights=lam, cone_weights=mu, separator=phi)


def local_cone_at(model, datum, w):
    """Generators of the local cone at the vertex ``w(X)``.

    ``w`` is an index into ``datum.weyl_elements``. Plus-roots contribute
    ``-beta(w X) H_beta`` (dropped when ``beta(w X) = 0``); minus-roots
    contribute ``-H_beta``.
    """
    apex = datum.weyl_elements[w] @ model.base_point
    zero = max(model.tol, 1e-12) * max(1.0, np.abs(apex).max())
    gens = []
    for rt in datum.positive_roots:
        if rt.mult_plus > 0:
            val = rt(apex)
            if abs(val) > zero:
                gens.append(-val * rt.h_beta)
    for rt in datum.positive_roots:
        if rt.mult_minus > 0:
            gens.append(-rt.h_beta)
    return LocalCone(apex=apex, generators=_as_rows(gens, len(apex)), weyl_index=w)


def all_local_cones(model, datum):
    """One local cone per distinct vertex."""
    return [local_cone_at(model, datum, w) for w in model.weyl_index]


def is_proper_cone(generators, tol=1e-9):
    """True iff cone(generators) contains no line."""
    G = np.asarray(generators, dtype=float)
    if G.size == 0:
        return True
    G = G.reshape(len(G), -1)
    norms = np.linalg.norm(G, axis=1)
    G = G[norms > tol] / norms[norms > tol, None]
    if len(G) == 0:
        return True
    m, r = G.shape
    A = np.vstack([G.T, np.ones((1, m))])
    b = np.concatenate([np.zeros(r), [1.0]])
    status, _, _, _ = _kernels.simplex_solve(A, b, np.zeros(m))
    return status == _kernels.INFEASIBLE


def membership_intersection(y, local_cones, tol=1e-8, band=None):
    """Is ``y`` in every ``apex + cone``?  Slack is the worst per-cone distance."""
    band = 10 * tol if band is None else band
    y = np.asarray(y, dtype=float)
    worst, failing = 0.0, []
    for i, lc in enumerate(local_cones):
        d, _ = distance_to_cone(y - lc.apex, lc.generators)
        if d > tol:
            failing.append(i)
        worst = max(worst, d)
    return Membership(_classify(worst, tol, band), worst, failing=failing)


def dominant_vertex(model, datum):
    """A vertex ``w'(X)`` with ``beta(w'X) >= 0`` for every positive plus-root."""
    best, best_score = None, -np.inf
    for v in model.vertices:
        score = min((rt(v) for rt in datum.positive_roots if rt.mult_plus > 0), default=0.0)
        if score > best_score:
            best, best_score = v, score
    return best


def positive_cone(datum):
    """Gamma_+ = cone{-H_beta : beta positive}."""
    return _as_rows([-rt.h_beta for rt in datum.positive_roots], datum.rank)
