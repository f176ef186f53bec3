"""Restricted roots of (g, a^{-tau}), their theta*tau multiplicity split,
the normalised vectors H_beta, and the Weyl group W_{K cap H} together with
group-level representatives in K cap H."""
from __future__ import annotations

from dataclasses import dataclass, field
import logging

import numpy as np
from scipy.optimize import brentq

from .lie_core import (
    apply_theta, bracket, exp_g, killing, unvec, vec, vec_stack,
)

log = logging.getLogger(__name__)

ROOT_MATCH_TOL = 1e-8
ROOT_GAP = 1e-6


class RootDatumError(RuntimeError):
    """Degenerate realization: roots cannot be separated numerically."""


@dataclass(frozen=True, eq=False)
class RestrictedRoot:
    beta: np.ndarray          # values on the a^{-tau} basis
    mult_plus: int
    mult_minus: int
    h_beta: np.ndarray        # a^{-tau} coordinates
    is_positive: bool
    is_reduced: bool = True

    def __call__(self, coords):
        return float(self.beta @ np.asarray(coords, dtype=float))


@dataclass(frozen=True, eq=False)
class RestrictedRootDatum:
    roots: list
    killing_gram: np.ndarray
    root_space_bases: list    # per root: (plus_basis, minus_basis), arrays of matrices
    centralizer_basis: np.ndarray
    weyl_elements: list = field(default_factory=list)
    weyl_reps: list = field(default_factory=list)
    rep_fidelity: list = field(default_factory=list)

    @property
    def positive_roots(self):
        return [r for r in self.roots if r.is_positive]

    @property
    def delta_minus_plus(self):
        return [r for r in self.roots if r.is_positive and r.mult_minus > 0]

    @property
    def rank(self):
        return self.killing_gram.shape[0]

    def to_dict(self):
        return {
            "roots": [
                {
                    "beta": r.beta.tolist(),
                    "mult_plus": r.mult_plus,
                    "mult_minus": r.mult_minus,
                    "h_beta": r.h_beta.tolist(),
                    "positive": r.is_positive,
                    "reduced": r.is_reduced,
                }
                for r in self.roots
            ],
            "weyl_elements": [w.tolist() for w in self.weyl_elements],
            "cone_generators": [g.tolist() for g in cone_generators(self)],
        }


def compute_h_beta(gram, beta):
    """The vector H with ``beta(H) = 1`` that is Killing-orthogonal to ker beta."""
    beta = np.asarray(beta, dtype=float)
    if not np.any(beta):
        raise ValueError("H_beta undefined for the zero functional")
    dual = np.linalg.solve(gram, beta)
    return dual / (beta @ dual)


def dual_norm_sq(gram, beta):
    """<beta, beta> for the Killing form transported to the dual."""
    beta = np.asarray(beta, dtype=float)
    return float(beta @ np.linalg.solve(gram, beta))


def reflection(root):
    """Matrix of ``Z -> Z - 2 beta(Z) H_beta`` on a^{-tau} coordinates."""
    r = len(root.beta)
    return np.eye(r) - 2.0 * np.outer(root.h_beta, root.beta)


def _lex_positive(b, tol=1e-9):
    for x in b:
        if x > tol:
            return True
        if x < -tol:
            return False
    return False


def _ad_matrix(real, H):
    B = vec_stack(real.basis_g)
    imgs = vec_stack(np.array([bracket(H, X) for X in real.basis_g]))
    return B @ imgs.T


def compute_root_datum(real, seed=0, with_weyl=True, max_redraws=8):
    """Simultaneous eigen-decomposition of ad(a^{-tau}) on g."""
    Hs = real.basis_a_minus_tau
    r = len(Hs)
    ads = [_ad_matrix(real, H) for H in Hs]
    scale = max(np.abs(M).max() for M in ads)
    rng = np.random.default_rng(seed)
    for attempt in range(max_redraws):
        coef = rng.integers(1, 60, size=r) / 7.0
        spaces = _joint_eigenspaces(ads, coef, scale)
        if spaces is not None:
            break
        log.debug("root clustering failed on draw %d, redrawing", attempt)
    else:
        raise RootDatumError("could not separate restricted roots; degenerate realization")

    Bg = real.basis_g
    gram = real.killing_gram_minus
    theta_tau = lambda X: apply_theta(real.tau(X))
    TT = vec_stack(Bg) @ vec_stack(np.array([theta_tau(X) for X in Bg])).T

    roots, bases, cent = [], [], None
    for cov, V in spaces:
        if np.linalg.norm(cov) < ROOT_MATCH_TOL * max(1.0, scale):
            cent = np.array([np.tensordot(v, Bg, axes=1) for v in V.T])
            continue
        T = V.T @ TT @ V
        T = (T + T.T) / 2
        w, E = np.linalg.eigh(T)
        plus = V @ E[:, w > 0]
        minus = V @ E[:, w < 0]
        if np.abs(np.abs(w) - 1).max() > 1e-8:
            raise RootDatumError("theta*tau does not preserve a root space")
        if plus.shape[1] % 2 or minus.shape[1] % 2:
            raise RootDatumError("odd real dimension in a complex root space")
        cov = np.where(np.abs(cov) < 1e-13 * max(1.0, scale), 0.0, cov)
        hb = compute_h_beta(gram, cov)
        hb[np.abs(hb) < 1e-14] = 0.0
        roots.append(RestrictedRoot(
            beta=cov,
            mult_plus=plus.shape[1] // 2,
            mult_minus=minus.shape[1] // 2,
            h_beta=hb,
            is_positive=_lex_positive(cov),
        ))
        bases.append((
            np.array([np.tensordot(v, Bg, axes=1) for v in plus.T]).reshape(-1, real.n, real.n),
            np.array([np.tensordot(v, Bg, axes=1) for v in minus.T]).reshape(-1, real.n, real.n),
        ))
    if cent is None:
        cent = np.zeros((0, real.n, real.n), dtype=np.complex128)

    # deterministic order: positive roots first, each block lexicographically
    def key(i):
        sgn = 1.0 if roots[i].is_positive else -1.0
        return (not roots[i].is_positive, tuple(-np.round(sgn * roots[i].beta, 9)))

    order = sorted(range(len(roots)), key=key)
    roots = [roots[i] for i in order]
    bases = [bases[i] for i in order]

    # reduced flag: beta is reduced unless beta/2 is also a root
    for i, rt in enumerate(roots):
        half = rt.beta / 2
        if any(np.linalg.norm(o.beta - half) < ROOT_MATCH_TOL * max(1.0, scale) for o in roots):
            roots[i] = RestrictedRoot(rt.beta, rt.mult_plus, rt.mult_minus, rt.h_beta,
                                      rt.is_positive, is_reduced=False)

    datum = RestrictedRootDatum(roots=roots, killing_gram=gram,
                                root_space_bases=bases, centralizer_basis=cent)
    if with_weyl:
        elems, reps, fid = compute_weyl_group(real, datum)
        datum = RestrictedRootDatum(roots=roots, killing_gram=gram, root_space_bases=bases,
                                    centralizer_basis=cent, weyl_elements=elems,
                                    weyl_reps=reps, rep_fidelity=fid)
    return datum


def _joint_eigenspaces(ads, coef, scale):
    M = sum(c * A for c, A in zip(coef, ads))
    M = (M + M.T) / 2
    w, V = np.linalg.eigh(M)
    gap = ROOT_GAP * max(1.0, scale)
    groups, start = [], 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > gap:
            groups.append((start, i))
            start = i
    out = []
    for a, b in groups:
        Vs = V[:, a:b]
        cov = np.empty(len(ads))
        for k, A in enumerate(ads):
            AV = A @ Vs
            cov[k] = np.trace(Vs.T @ AV) / Vs.shape[1]
            if np.linalg.norm(AV - cov[k] * Vs) > ROOT_MATCH_TOL * max(1.0, scale):
                return None
        out.append((cov, Vs))
    covs = [c for c, _ in out]
    for i in range(len(covs)):
        for j in range(i + 1, len(covs)):
            if np.linalg.norm(covs[i] - covs[j]) < gap:
                return None
    return out


def ad_on_a_minus(real, g):
    """Matrix of ``Ad(g)`` restricted to a^{-tau}, plus the residual leaving a^{-tau}."""
    Bm = real.basis_a_minus_tau
    gi = np.linalg.inv(g)
    B = vec_stack(Bm).T
    cols, res = [], 0.0
    for H in Bm:
        v = vec(g @ H @ gi)
        c, *_ = np.linalg.lstsq(B, v, rcond=None)
        cols.append(c)
        res = max(res, float(np.linalg.norm(B @ c - v)))
    return np.array(cols).T, res


def _rep_for_reflection(real, root, plus_basis, target, grid=720):
    """exp(tZ), Z = X + theta X in k cap h, solved for Ad|a^{-tau} = s_beta."""
    n = real.n
    X = plus_basis[0]
    nb = dual_norm_sq(real.killing_gram_minus, root.beta)
    X = X / (np.linalg.norm(X) * 2.0 * np.sqrt(n * nb))
    Z = X + apply_theta(X)
    Hb = real.a_minus_matrix(root.h_beta)
    sine_dir = X - apply_theta(X)

    def err(t):
        M, off = ad_on_a_minus(real, exp_g(t * Z))
        return np.linalg.norm(M - target) + off

    def sine(t):
        g = exp_g(t * Z)
        return float(np.real(np.vdot(vec(sine_dir), vec(g @ Hb @ np.linalg.inv(g)))))

    ts = np.linspace(0.0, 2 * np.pi, grid + 1)[1:]
    vals = np.array([err(t) for t in ts])
    i = int(np.argmin(vals))
    t0 = ts[i]
    step = ts[1] - ts[0]
    lo, hi = max(t0 - step, 1e-12), t0 + step
    t_star = t0
    try:
        if sine(lo) * sine(hi) < 0:
            t_star = brentq(sine, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    except ValueError:
        pass
    rep = exp_g(t_star * Z)
    return rep, err(t_star)


def _find(elems, M, tol=1e-8):
    for i, E in enumerate(elems):
        if np.abs(E - M).max() < tol:
            return i
    return -1


def compute_weyl_group(real, datum, accept=1e-8):
    """Reflection group of roots with (g^beta)_+ != 0, with K cap H representatives.

    Returns ``(elements, reps, fidelity)``; a representative is ``None`` when
    the numeric solve missed the acceptance threshold.
    """
    r = datum.rank
    gens = []
    for rt, (plus, _) in zip(datum.roots, datum.root_space_bases):
        if rt.is_positive and rt.is_reduced and rt.mult_plus > 0:
            S = reflection(rt)
            rep, fid = _rep_for_reflection(real, rt, plus, S)
            if fid > accept:
                log.warning("Weyl representative for beta=%s missed tolerance (%.2e)", rt.beta, fid)
                rep = None
            gens.append((S, rep))
    elems, reps = [np.eye(r)], [np.eye(real.n, dtype=np.complex128)]
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for S, rep in gens:
                M = S @ elems[idx]
                if _find(elems, M) < 0:
                    elems.append(M)
                    reps.append(None if rep is None or reps[idx] is None else rep @ reps[idx])
                    nxt.append(len(elems) - 1)
        frontier = nxt
        if len(elems) > 10000:
            raise RootDatumError("Weyl group closure did not terminate")
    fid = []
    for M, rep in zip(elems, reps):
        if rep is None:
            fid.append(np.inf)
        else:
            A, off = ad_on_a_minus(real, rep)
            fid.append(float(max(np.abs(A - M).max(), off)))
    return elems, reps, fid


def cone_generators(datum):
    """``{-H_beta : beta in Delta^+_-}``."""
    return [-rt.h_beta for rt in datum.delta_minus_plus]


def weyl_closure_ok(datum, tol=1e-8):
    E = datum.weyl_elements
    return all(_find(E, A @ B, tol) >= 0 for A in E for B in E)
