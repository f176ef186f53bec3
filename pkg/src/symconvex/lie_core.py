"""Matrix model of g = sl(n, C) with commuting involutions theta, tau and the
group-level Iwasawa decomposition G = N A K.

All subspaces are real subspaces of g viewed as a real vector space of
dimension 2(n^2 - 1). Matrices are vectorised as ``[Re X, Im X]`` so that the
Euclidean inner product equals ``Re tr(X Y^*)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg

from . import _kernels

PRESETS = ("compact", "split", "supq")


@dataclass(frozen=True)
class Tolerances:
    structural: float = 1e-12
    roundtrip: float = 1e-10
    membership: float = 1e-8


DEFAULT_TOL = Tolerances()


class RealizationError(RuntimeError):
    """A realization failed its own invariant checks (an implementation bug)."""


class IwasawaError(ValueError):
    """Input cannot be Iwasawa-factored to working accuracy."""

    def __init__(self, msg, condition=None):
        super().__init__(msg if condition is None else f"{msg} (cond ~ {condition:.3e})")
        self.condition = condition


# --------------------------------------------------------------------------
# vectorisation helpers


def vec(X):
    X = np.asarray(X)
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


def unvec(v, n):
    v = np.asarray(v, dtype=float)
    k = n * n
    return (v[:k] + 1j * v[k:]).reshape(n, n)


def vec_stack(mats):
    mats = np.asarray(mats)
    if mats.size == 0:
        return np.zeros((0, 0))
    m = mats.shape[0]
    return np.concatenate([mats.real.reshape(m, -1), mats.imag.reshape(m, -1)], axis=1)


def orthonormalize(mats, tol=1e-9):
    """Modified Gram-Schmidt on a sequence of matrices; drops dependent ones."""
    mats = list(mats)
    if not mats:
        return np.zeros((0, 0, 0), dtype=np.complex128)
    n = np.asarray(mats[0]).shape[0]
    out = []
    for M in mats:
        v = vec(M).astype(float)
        for _ in range(2):
            for u in out:
                v = v - (u @ v) * u
        nrm = np.linalg.norm(v)
        if nrm > tol:
            out.append(v / nrm)
    if not out:
        return np.zeros((0, n, n), dtype=np.complex128)
    return np.array([unvec(u, n) for u in out])


def elementary(n, i, j):
    E = np.zeros((n, n), dtype=np.complex128)
    E[i, j] = 1.0
    return E


def numeric_rank(M, rel=1e-9):
    M = np.atleast_2d(M)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rel * s[0]))


# --------------------------------------------------------------------------
# involutions and forms


def apply_theta(X):
    """Cartan involution ``X -> -X^*``."""
    return -np.conj(np.swapaxes(np.asarray(X), -1, -2))


def _tau_for(preset, n, p):
    if preset == "compact":
        return apply_theta
    if preset == "split":
        return np.conj
    if preset == "supq":
        ipq = np.concatenate([np.ones(p), -np.ones(n - p)])

        def tau(X):
            Xs = np.conj(np.swapaxes(np.asarray(X), -1, -2))
            return -(ipq[:, None] * Xs * ipq[None, :])

        return tau
    raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")


def apply_tau(real, X):
    return real.tau(X)


def killing(X, Y):
    """Killing form of sl(n, C): ``2n tr(XY)``."""
    X = np.asarray(X)
    n = X.shape[-1]
    return 2 * n * np.trace(X @ np.asarray(Y), axis1=-2, axis2=-1)


def killing_pairing(X, Y):
    """Return ``(kappa(X, Y), Im kappa(X, Y))``."""
    k = complex(killing(X, Y))
    return k, k.imag


def bracket(X, Y):
    return X @ Y - Y @ X


def exp_g(X):
    """Matrix exponential; exact eigen-route for normal input, Pade otherwise."""
    X = np.asarray(X, dtype=np.complex128)
    Xh = X.conj().T
    if np.array_equal(X, Xh):
        w, V = np.linalg.eigh(X)
        return (V * np.exp(w)) @ V.conj().T
    if np.array_equal(X, -Xh):
        w, V = np.linalg.eigh(-1j * X)
        return (V * np.exp(1j * w)) @ V.conj().T
    return scipy.linalg.expm(X)


# --------------------------------------------------------------------------
# realization


@dataclass(frozen=True, eq=False)
class SymmetricSpaceRealization:
    preset: str
    n: int
    p: int | None
    q: int | None
    basis_g: np.ndarray
    basis_h: np.ndarray
    basis_q: np.ndarray
    basis_k: np.ndarray
    basis_p: np.ndarray
    basis_a: np.ndarray
    basis_a_minus_tau: np.ndarray
    basis_a_tau: np.ndarray
    basis_n: np.ndarray
    basis_c: np.ndarray
    basis_c_minus_tau: np.ndarray
    frame: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL)

    @property
    def dim_g(self):
        return 2 * (self.n ** 2 - 1)

    @property
    def rank_minus(self):
        return len(self.basis_a_minus_tau)

    @property
    def rank_plus(self):
        return len(self.basis_a_tau)

    def theta(self, X):
        return apply_theta(X)

    def tau(self, X):
        return _tau_for(self.preset, self.n, self.p)(X)

    # frame-diagonal images of the a-basis; rows index basis elements
    @cached_property
    def a_frame_diagonals(self):
        U = self.frame
        return np.array([np.diagonal(U.conj().T @ H @ U).real for H in self.basis_a])

    @cached_property
    def killing_gram_minus(self):
        """Gram matrix of the Killing form on the a^{-tau} basis (real, positive definite)."""
        B = self.basis_a_minus_tau
        return np.array([[killing(X, Y).real for Y in B] for X in B])

    @cached_property
    def _splitting(self):
        # columns: h basis, then c^{-tau} + n basis
        star = np.concatenate([self.basis_c_minus_tau, self.basis_n])
        M = np.concatenate([vec_stack(self.basis_h), vec_stack(star)]).T
        return np.linalg.pinv(M), len(self.basis_h), star

    def split_h_star(self, X):
        """Return ``(pr_h X, pr_{c^{-tau}+n} X)`` for the Manin-triple splitting."""
        pinv, dh, star = self._splitting
        coef = pinv @ vec(X)
        Xh = np.tensordot(coef[:dh], self.basis_h, axes=1)
        Xs = np.tensordot(coef[dh:], star, axes=1)
        return Xh, Xs

    def pr_h(self, X):
        return self.split_h_star(X)[0]

    @cached_property
    def _n_projector(self):
        Bn = vec_stack(self.basis_n).T
        return Bn @ Bn.T

    def pr_n(self, X):
        """Orthogonal projection onto n."""
        return unvec(self._n_projector @ vec(X), self.n)

    def coords(self, X, basis):
        """Least-squares real coordinates of X in ``basis``; returns (coords, residual)."""
        B = vec_stack(basis).T
        v = vec(X)
        c, *_ = np.linalg.lstsq(B, v, rcond=None)
        return c, float(np.linalg.norm(B @ c - v))

    def a_minus_matrix(self, coords):
        return np.tensordot(np.asarray(coords, dtype=float), self.basis_a_minus_tau, axes=1)

    def summary(self):
        return {
            "preset": self.preset,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "dim_g": self.dim_g,
            "dim_h": len(self.basis_h),
            "dim_k": len(self.basis_k),
            "dim_n": len(self.basis_n),
            "dim_a_minus_tau": self.rank_minus,
            "dim_a_tau": self.rank_plus,
        }


def _a_bases(preset, n):
    """Explicit bases of a^{-tau} and a^tau."""
    if preset in ("compact", "supq"):
        am = [elementary(n, k, k) - elementary(n, n - 1, n - 1) for k in range(n - 1)]
        return am, []
    # split: i(E_{2k,2k+1} - E_{2k+1,2k}) on 2x2 blocks, a^tau = traceless block scalars
    am = []
    blocks = []
    for k in range(n // 2):
        i, j = 2 * k, 2 * k + 1
        am.append(1j * (elementary(n, i, j) - elementary(n, j, i)))
        blocks.append([i, j])
    if n % 2:
        blocks.append([n - 1])
    last = blocks[-1]
    at = []
    for blk in blocks[:-1]:
        D = np.zeros((n, n), dtype=np.complex128)
        for i in blk:
            D[i, i] = len(last)
        for i in last:
            D[i, i] = -len(blk)
        at.append(D)
    return am, at


def _frame(basis_a, n):
    """Unitary U with U^* a U diagonal; columns ordered so that n is upper triangular."""
    weights = np.sqrt(np.array([2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0]))
    Hgen = sum(w * H for w, H in zip(weights, basis_a))
    _, V = np.linalg.eigh(Hgen)
    # fix eigenvector phases: largest-magnitude entry (first on ties) real positive
    for j in range(n):
        col = V[:, j]
        idx = int(np.argmax(np.round(np.abs(col), 12)))
        V[:, j] = col * (abs(col[idx]) / col[idx])
    lam = np.array([[np.vdot(V[:, j], H @ V[:, j]).real for H in basis_a] for j in range(n)])
    keys = [tuple(np.round(row, 9)) for row in lam]
    order = sorted(range(n), key=lambda j: keys[j], reverse=True)
    U = V[:, order]
    U[np.abs(U) < 1e-15] = 0.0
    return U


def build_realization(preset, n, p=None, q=None, tol=DEFAULT_TOL, validate=True):
    """Construct the matrix model for a preset.

    Parameters
    ----------
    preset : {"compact", "split", "supq"}
    n : int
        Matrix size, ``n >= 2``.
    p, q : int, optional
        Signature for ``supq``; ``p + q == n``, both positive.
    """
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    if preset == "supq":
        if p is None and q is None:
            raise ValueError("supq needs p and q")
        p = n - q if p is None else int(p)
        q = n - p if q is None else int(q)
        if p < 1 or q < 1 or p + q != n:
            raise ValueError(f"supq needs p, q >= 1 with p + q = n (got p={p}, q={q}, n={n})")
    else:
        p = q = None

    tau = _tau_for(preset, n, p)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                gens += [elementary(n, i, j), 1j * elementary(n, i, j)]
    for k in range(n - 1):
        D = elementary(n, k, k) - elementary(n, n - 1, n - 1)
        gens += [D, 1j * D]
    basis_g = orthonormalize(gens)

    def eig_part(f, sgn):
        return orthonormalize([(X + sgn * f(X)) / 2 for X in basis_g])

    basis_h, basis_q = eig_part(tau, 1), eig_part(tau, -1)
    basis_k, basis_p = eig_part(apply_theta, 1), eig_part(apply_theta, -1)

    am, at = _a_bases(preset, n)
    basis_a_minus_tau = np.array(am, dtype=np.complex128).reshape(-1, n, n)
    basis_a_tau = np.array(at, dtype=np.complex128).reshape(-1, n, n)
    basis_a = np.concatenate([basis_a_minus_tau, basis_a_tau])
    U = _frame(basis_a, n)

    n_mats = []
    for i in range(n):
        for j in range(i + 1, n):
            E = elementary(n, i, j)
            n_mats += [U @ E @ U.conj().T, U @ (1j * E) @ U.conj().T]
    basis_n = np.array(n_mats, dtype=np.complex128).reshape(-1, n, n)
    c_mats = []
    for k in range(n - 1):
        D = elementary(n, k, k) - elementary(n, n - 1, n - 1)
        c_mats += [U @ D @ U.conj().T, U @ (1j * D) @ U.conj().T]
    basis_c = orthonormalize(c_mats)
    basis_c_minus_tau = orthonormalize([(X - tau(X)) / 2 for X in basis_c])

    real = SymmetricSpaceRealization(
        preset=preset, n=n, p=p, q=q,
        basis_g=basis_g, basis_h=basis_h, basis_q=basis_q,
        basis_k=basis_k, basis_p=basis_p,
        basis_a=basis_a, basis_a_minus_tau=basis_a_minus_tau, basis_a_tau=basis_a_tau,
        basis_n=basis_n, basis_c=basis_c, basis_c_minus_tau=basis_c_minus_tau,
        frame=U, tol=tol,
    )
    if validate:
        failures = [k for k, ok in validate_realization(real).items() if not ok]
        if failures:
            raise RealizationError(f"realization {preset}/{n} failed invariants: {failures}")
    return real


def validate_realization(real):
    """Evaluate every structural invariant; returns ``{name: bool}``."""
    t = real.tol.structural * 10
    n = real.n
    th, ta = real.theta, real.tau
    G = real.basis_g
    res = {}
    res["theta_squared"] = max(np.abs(th(th(X)) - X).max() for X in G) < t
    res["tau_squared"] = max(np.abs(ta(ta(X)) - X).max() for X in G) < t
    res["theta_tau_commute"] = max(np.abs(th(ta(X)) - ta(th(X))).max() for X in G) < t
    res["traceless"] = all(abs(np.trace(X)) < t for X in G)
    res["dim_g"] = len(G) == real.dim_g
    res["h_plus_q"] = len(real.basis_h) + len(real.basis_q) == real.dim_g
    res["k_plus_p"] = len(real.basis_k) + len(real.basis_p) == real.dim_g
    res["h_q_span"] = numeric_rank(vec_stack(np.concatenate([real.basis_h, real.basis_q]))) == real.dim_g
    A = real.basis_a
    res["a_abelian"] = all(np.abs(bracket(X, Y)).max() < t for X in A for Y in A)
    res["a_minus_in_pq"] = all(
        np.abs(th(H) + H).max() < t and np.abs(ta(H) + H).max() < t for H in real.basis_a_minus_tau)
    res["a_plus_in_ph"] = all(
        np.abs(th(H) + H).max() < t and np.abs(ta(H) - H).max() < t for H in real.basis_a_tau)
    # z_p(a) = a  <=>  a maximal abelian in p
    cols = []
    for X in real.basis_p:
        cols.append(np.concatenate([vec(bracket(H, X)) for H in A]))
    M = np.array(cols).T
    null_dim = len(real.basis_p) - numeric_rank(M)
    res["a_maximal_abelian"] = null_dim == len(A) == n - 1
    Uf = real.frame
    res["frame_unitary"] = np.abs(Uf @ Uf.conj().T - np.eye(n)).max() < t
    res["transversal"] = (
        numeric_rank(vec_stack(np.concatenate([real.basis_h, real.basis_n])))
        == len(real.basis_h) + len(real.basis_n))
    rep = manin_residuals(real)
    res["manin_isotropic"] = max(rep["h_isotropy"], rep["star_isotropy"]) < t
    res["manin_nondegenerate"] = rep["cross_min_singular"] > 1e-6
    res["manin_dims"] = rep["dim_h"] + rep["dim_star"] == real.dim_g
    return res


def manin_residuals(real):
    """Isotropy of h and c^{-tau}+n under Im kappa, plus cross-pairing conditioning."""
    H = real.basis_h
    S = np.concatenate([real.basis_c_minus_tau, real.basis_n])

    def gram(P, Q):
        return np.array([[killing(X, Y).imag for Y in Q] for X in P])

    ghh = gram(H, H)
    gss = gram(S, S)
    ghs = gram(H, S)
    sv = np.linalg.svd(ghs, compute_uv=False) if ghs.size else np.array([0.0])
    return {
        "h_isotropy": float(np.abs(ghh).max()),
        "star_isotropy": float(np.abs(gss).max()),
        "cross_min_singular": float(sv.min()),
        "dim_h": len(H),
        "dim_star": len(S),
    }


# --------------------------------------------------------------------------
# Iwasawa decomposition


@dataclass(frozen=True)
class IwasawaFactors:
    n_part: np.ndarray
    a_part: np.ndarray
    k_part: np.ndarray
    log_a: np.ndarray


def log_a(real, a_part):
    """Coordinates (in ``basis_a``) of log of an element of A."""
    U = real.frame
    D = U.conj().T @ np.asarray(a_part) @ U
    diag = np.diagonal(D)
    off = np.abs(D - np.diag(diag)).max()
    scale = max(1.0, np.abs(diag).max())
    if off > 1e-8 * scale or np.abs(diag.imag).max() > 1e-8 * scale or np.any(diag.real <= 0):
        raise ValueError("log_a: input is not in A (positive diagonal in the frame)")
    return _log_diag_coords(real, np.log(diag.real))


def _log_diag_coords(real, logd):
    c, *_ = np.linalg.lstsq(real.a_frame_diagonals.T, logd, rcond=None)
    return c


def iwasawa_nak(real, g):
    """Factor ``g = n a k`` (N unipotent, A positive, K = SU(n))."""
    g = np.asarray(g, dtype=np.complex128)
    if not np.all(np.isfinite(g)):
        raise IwasawaError("non-finite input")
    U = real.frame
    gf = U.conj().T @ g @ U
    try:
        R, Q = _kernels.rq_positive(gf)
    except ZeroDivisionError:
        raise IwasawaError("singular input", condition=np.inf) from None
    d = np.diagonal(R).real
    if d.min() <= 1e-14 * d.max():
        raise IwasawaError("ill-conditioned input", condition=float(d.max() / max(d.min(), 1e-300)))
    nf = R / d[np.newaxis, :]
    Uh = U.conj().T
    return IwasawaFactors(
        n_part=U @ nf @ Uh,
        a_part=U @ np.diag(d) @ Uh,
        k_part=U @ Q @ Uh,
        log_a=_log_diag_coords(real, np.log(d)),
    )


def iwasawa_log_diag(real, g):
    """Fast path: log of the frame-diagonal of the A-part (length n)."""
    U = real.frame
    R, _ = _kernels.rq_positive(U.conj().T @ np.asarray(g, dtype=np.complex128) @ U)
    return np.log(np.diagonal(R).real)


def phi(real, g):
    """Moment map: a^{-tau} coordinates of log mu(g), projected along a^tau."""
    try:
        logd = iwasawa_log_diag(real, g)
    except ZeroDivisionError:
        raise IwasawaError("singular input", condition=np.inf) from None
    if not np.all(np.isfinite(logd)):
        raise IwasawaError("non-finite Iwasawa A-part")
    return _log_diag_coords(real, logd)[: real.rank_minus]
