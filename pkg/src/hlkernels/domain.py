"""Model domains with strictly plurisubharmonic defining functions.

Both built-in models are quadratic in (zeta, zetabar), so every jet is
closed-form:

    BALL     r = |zeta|^2 - 1
    PINCHED  r = sum |zeta_j|^2 - 2 Re(zeta_1^2),  n >= 2

PINCHED has a single boundary critical point at the origin where the real
Hessian is nondegenerate, i.e. a Morse boundary singularity; its Levi matrix
is still the identity everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forms import Metric

TOL_FRAME = 1e-8


class DomainError(Exception):
    pass


class OutsideDomain(DomainError):
    pass


class SingularFramePoint(DomainError):
    pass


class DiagonalRadiusExceeded(DomainError):
    pass


@dataclass(frozen=True)
class Jet:
    """Defining-function data at a point: value, holomorphic gradient, and
    the constant second-order blocks (both models are quadratic, so all
    third and fourth derivatives vanish)."""

    value: float
    grad: np.ndarray          # dr/dzeta_j
    levi: np.ndarray          # d2r / dzeta_i dzetabar_j
    hol2: np.ndarray          # d2r / dzeta_i dzeta_j

    def real_hessian(self) -> np.ndarray:
        """Real 2n x 2n Hessian in coordinates (x1, y1, ..., xn, yn).

        Assembled from the Wirtinger blocks via d/dx = d/dz + d/dzbar,
        d/dy = i(d/dz - d/dzbar).
        """
        n = self.grad.shape[0]
        H = np.zeros((2 * n, 2 * n))
        for i in range(n):
            for j in range(n):
                a = self.levi[i, j]
                b = self.hol2[i, j]
                H[2 * i, 2 * j] = 2 * (a.real + b.real)
                H[2 * i + 1, 2 * j + 1] = 2 * (a.real - b.real)
                H[2 * i, 2 * j + 1] = 2 * (a.imag - b.imag)
                H[2 * i + 1, 2 * j] = 2 * (-a.imag - b.imag)
        return H


@dataclass(frozen=True)
class DomainModel:
    """A model domain: defining function r with exact jets, a boundary collar
    U = {r_lo < r < r_hi}, Morse critical points on the boundary, and the
    patching radius delta."""

    name: str
    n: int
    levi_const: np.ndarray
    hol2_const: np.ndarray
    r_const: float
    delta: float = 0.15
    diag_radius: float = 0.75
    r_lo: float = -0.5
    r_hi: float = 0.5
    critical_points: tuple[tuple[complex, ...], ...] = ()
    bounding_radius: float = 1.6

    def r(self, zeta: np.ndarray) -> float:
        zeta = np.asarray(zeta, dtype=complex)
        quad = float(np.real(zeta.conj() @ (self.levi_const @ zeta)))
        hol = 2.0 * float(np.real(zeta @ (self.hol2_const @ zeta)))
        return quad + hol + self.r_const

    def jet(self, zeta: np.ndarray, order: int = 4) -> Jet:
        """Exact derivatives of r at zeta, holomorphic type up to `order`."""
        if order > 4:
            raise DomainError("jets supported to order 4")
        zeta = np.asarray(zeta, dtype=complex)
        if not self.in_halo(zeta):
            raise OutsideDomain(f"{zeta} outside D union U for {self.name}")
        grad = self.levi_const @ zeta.conj() + 2 * (self.hol2_const @ zeta)
        return Jet(value=self.r(zeta), grad=grad,
                   levi=self.levi_const.copy(), hol2=2 * self.hol2_const)

    # region predicates -------------------------------------------------

    def in_domain(self, zeta: np.ndarray, eps: float = 0.0) -> bool:
        return self.r(zeta) < -eps

    def in_halo(self, zeta: np.ndarray) -> bool:
        """Inside D or its boundary collar (where jets are used)."""
        z = np.asarray(zeta, dtype=complex)
        if np.linalg.norm(z) > self.bounding_radius:
            return False
        return self.r(z) < self.r_hi

    def in_collar(self, zeta: np.ndarray) -> bool:
        return self.r_lo < self.r(zeta) < self.r_hi

    # geometry -----------------------------------------------------------

    def metric(self, zeta: np.ndarray) -> Metric:
        return Metric(self.levi_const)

    def gamma(self, zeta: np.ndarray) -> float:
        """Levi-metric length of dr: gamma = |dr|, zero exactly at critical
        points."""
        grad = self.jet(zeta).grad
        hinv = np.linalg.inv(self.levi_const)
        val = np.real(grad.conj() @ (hinv @ grad))
        return float(np.sqrt(max(val, 0.0)))

    def frame(self, zeta: np.ndarray) -> np.ndarray:
        """Orthonormal coframe rows (omega^1 .. omega^n) with dr = gamma omega^n.

        Orthonormal for the Levi metric; deterministic Gram-Schmidt over the
        coordinate coframe in index order.
        """
        jet = self.jet(zeta)
        g = self.gamma(zeta)
        if g <= TOL_FRAME:
            raise SingularFramePoint(f"gamma={g:.2e} at {zeta}")
        gram = np.linalg.inv(self.levi_const)  # coframe inner products

        def dot(u, v):
            return complex(u @ gram @ v.conj())

        last = jet.grad / g
        rows = []
        for j in range(self.n):
            cand = np.zeros(self.n, dtype=complex)
            cand[j] = 1.0
            cand = cand - dot(cand, last) * last
            for row in rows:
                cand = cand - dot(cand, row) * row
            nrm = np.sqrt(abs(dot(cand, cand)))
            if nrm < 1e-7:
                continue
            rows.append(cand / nrm)
            if len(rows) == self.n - 1:
                break
        if len(rows) != self.n - 1:
            raise SingularFramePoint(f"could not complete frame at {zeta}")
        rows.append(last)
        return np.array(rows)

    def dual_frame(self, zeta: np.ndarray) -> np.ndarray:
        """Columns are the dual (1,0) vector fields L_1..L_n of the coframe."""
        return np.linalg.inv(self.frame(zeta))

    # pairwise data --------------------------------------------------------

    def _check_pair(self, zeta: np.ndarray, z: np.ndarray) -> None:
        if np.linalg.norm(np.asarray(zeta) - np.asarray(z)) > self.diag_radius:
            raise DiagonalRadiusExceeded(
                f"|zeta-z| > {self.diag_radius}; kernels are local to the diagonal")

    def rho2(self, zeta: np.ndarray, z: np.ndarray) -> float:
        """Symmetrized squared distance 2 <h(m) d, d> with m the midpoint."""
        zeta = np.asarray(zeta, dtype=complex)
        z = np.asarray(z, dtype=complex)
        self._check_pair(zeta, z)
        d = zeta - z
        val = np.real(d.conj() @ (self.levi_const @ d))
        return float(2.0 * val)

    def d_zeta_rho2(self, zeta: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Coefficients of d_zeta rho^2 along dzeta_j (exact: constant Levi)."""
        d = np.asarray(zeta, dtype=complex) - np.asarray(z, dtype=complex)
        return 2.0 * (self.levi_const.T @ d.conj())

    def dbar_zeta_rho2(self, zeta: np.ndarray, z: np.ndarray) -> np.ndarray:
        d = np.asarray(zeta, dtype=complex) - np.asarray(z, dtype=complex)
        return 2.0 * (self.levi_const @ d)

    def levi_polynomial_f(self, zeta: np.ndarray, z: np.ndarray) -> complex:
        """Second-order support function, holomorphic in z."""
        zeta = np.asarray(zeta, dtype=complex)
        z = np.asarray(z, dtype=complex)
        self._check_pair(zeta, z)
        jet = self.jet(zeta)
        d = zeta - z
        return complex(jet.grad @ d - 0.5 * (d @ (jet.hol2 @ d)))

    def phi(self, zeta: np.ndarray, z: np.ndarray) -> complex:
        return self.levi_polynomial_f(zeta, z) - self.r(zeta)

    def phi_star(self, zeta: np.ndarray, z: np.ndarray) -> complex:
        return complex(np.conj(self.phi(z, zeta)))

    def big_p(self, zeta: np.ndarray, z: np.ndarray) -> float:
        """Extended squared distance rho^2 + 2 (r/gamma)(r*/gamma*)."""
        g1 = self.gamma(zeta)
        g2 = self.gamma(z)
        if g1 <= TOL_FRAME or g2 <= TOL_FRAME:
            raise SingularFramePoint("gamma vanishes; P undefined")
        return self.rho2(zeta, z) + 2.0 * (self.r(zeta) / g1) * (self.r(z) / g2)

    def xi_patch(self, zeta: np.ndarray) -> float:
        """C^2 cutoff in |r|: 1 for |r| <= delta, 0 for |r| >= 1.5 delta."""
        s = abs(self.r(zeta))
        if s <= self.delta:
            return 1.0
        if s >= 1.5 * self.delta:
            return 0.0
        t = (s - self.delta) / (0.5 * self.delta)
        return 1.0 - (10 * t ** 3 - 15 * t ** 4 + 6 * t ** 5)

    def geo_pair(self, zeta: np.ndarray, z: np.ndarray) -> "GeoPair":
        g1 = self.gamma(zeta)
        g2 = self.gamma(z)
        return GeoPair(
            model=self, zeta=np.asarray(zeta, dtype=complex),
            z=np.asarray(z, dtype=complex),
            r=self.r(zeta), r_star=self.r(z),
            grad=self.jet(zeta).grad,
            gamma=g1, gamma_star=g2,
            rho2=self.rho2(zeta, z),
            f=self.levi_polynomial_f(zeta, z),
            phi=self.phi(zeta, z),
            phi_star=self.phi_star(zeta, z),
            big_p=self.big_p(zeta, z) if min(g1, g2) > TOL_FRAME else np.nan,
        )

    # boundary helpers ----------------------------------------------------

    def project_boundary(self, zeta: np.ndarray, iters: int = 60) -> np.ndarray:
        """Newton projection onto {r = 0} along the real gradient."""
        z = np.asarray(zeta, dtype=complex).copy()
        for _ in range(iters):
            val = self.r(z)
            if abs(val) < 1e-14:
                break
            grad = self.jet(z).grad          # dr/dzeta
            gr2 = 2 * np.conj(grad)          # real gradient, complex packing
            denom = float(np.real(gr2.conj() @ gr2))
            if denom < 1e-30:
                raise SingularFramePoint("projection hit a critical point")
            z = z - gr2 * (val / denom)
        return z

    def inward_normal(self, zeta: np.ndarray) -> np.ndarray:
        grad = self.jet(zeta).grad
        v = 2 * np.conj(grad)     # real-gradient direction
        nv = np.linalg.norm(v)
        if nv < 1e-30:
            raise SingularFramePoint("normal undefined at critical point")
        return -v / nv

    def tangent_direction(self, zeta: np.ndarray, seed: int = 0) -> np.ndarray:
        """A deterministic unit vector tangent to {r = const} at zeta."""
        grad = self.jet(zeta).grad
        v = 2 * np.conj(grad)
        v = v / np.linalg.norm(v)
        rng = np.random.default_rng(1000 + seed)
        cand = rng.standard_normal(self.n) + 1j * rng.standard_normal(self.n)
        # orthogonalize against the real gradient in the real inner product
        t = cand - v * np.real(np.vdot(v, cand))
        t = t - 1j * v * np.real(np.vdot(1j * v, t))
        nt = np.linalg.norm(t)
        if nt < 1e-12:
            raise DomainError("degenerate tangent seed")
        return t / nt


def ball(n: int, delta: float = 0.15) -> DomainModel:
    # Re Phi = 1 - Re<zeta, z> > 0 holds globally on the ball, so the support
    # function needs no diagonal localization there.
    return DomainModel(name="ball", n=n,
                       levi_const=np.eye(n, dtype=complex),
                       hol2_const=np.zeros((n, n), dtype=complex),
                       r_const=-1.0, delta=delta, diag_radius=4.0)


def pinched(n: int, delta: float = 0.15) -> DomainModel:
    if n < 2:
        raise DomainError("pinched model needs n >= 2")
    hol2 = np.zeros((n, n), dtype=complex)
    hol2[0, 0] = -1.0       # r contains -2 Re(zeta_1^2) = -zeta_1^2 - conj^2
    return DomainModel(name="pinched", n=n,
                       levi_const=np.eye(n, dtype=complex),
                       hol2_const=hol2, r_const=0.0, delta=delta,
                       critical_points=((0.0,) * n,))


_BUILDERS = {"ball": ball, "pinched": pinched}


def make_domain(name: str, n: int, delta: float = 0.15) -> DomainModel:
    try:
        builder = _BUILDERS[name.lower()]
    except KeyError:
        raise DomainError(f"unknown domain {name!r}; have {sorted(_BUILDERS)}")
    return builder(n, delta=delta)


@dataclass(frozen=True)
class GeoPair:
    """All geometric data at a point pair."""

    model: DomainModel
    zeta: np.ndarray
    z: np.ndarray
    r: float
    r_star: float
    grad: np.ndarray
    gamma: float
    gamma_star: float
    rho2: float
    f: complex
    phi: complex
    phi_star: complex
    big_p: float
