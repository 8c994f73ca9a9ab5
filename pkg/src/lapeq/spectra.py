"""Symmetric eigensolver, Laplacian spectra and energy, and closed-form
spectra of perturbed tridiagonal Toeplitz matrices.

Spectra are descending-sorted real multisets with tolerance-aware matching,
which is what the edge-insertion replacement identity needs: it removes one
multiset from a Laplacian spectrum and unions another in.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graphs import Graph, average_degree, laplacian

# Eigensolver tuning: stop once the off-diagonal Frobenius norm falls below
# OFF_NORM_FACTOR * ||m||, never rotate pivots below thresh/n (keeps the final
# off-norm under the threshold), give up after SWEEP_BUDGET full sweeps.
OFF_NORM_FACTOR = 1e-14
SWEEP_BUDGET = 100


class ConvergenceError(RuntimeError):
    """Eigensolver failed to reach the off-diagonal threshold within budget."""


class SpectrumMatchError(ValueError):
    """A multiset element found no partner within tolerance."""


class SigmaMismatchError(ValueError):
    """The two graphs disagree on sigma, so the energy-difference formula does not apply."""


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalue multiset, sorted descending, with an absolute matching tolerance."""

    values: tuple[float, ...]
    tol: float = field(default=1e-9, compare=False)

    def __init__(self, values: Iterable[float], tol: float = 1e-9):
        vals = tuple(sorted((float(v) for v in values), reverse=True))
        if tol <= 0:
            raise ValueError(f"tolerance must be positive, got {tol}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "tol", tol)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def sum(self) -> float:
        return math.fsum(self.values)

    def rounded(self, ndigits: int = 5) -> tuple[float, ...]:
        return tuple(round(v, ndigits) for v in self.values)

    def multiplicity(self, x: float, tol: float | None = None) -> int:
        t = self.tol if tol is None else tol
        return sum(1 for v in self.values if abs(v - x) <= t)

    def count_at_least(self, x: float, tol: float | None = None) -> int:
        """Number of values >= x, where anything within tol below x still counts."""
        t = self.tol if tol is None else tol
        return sum(1 for v in self.values if v >= x - t)

    def with_tol(self, tol: float) -> "Spectrum":
        return Spectrum(self.values, tol)

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["index", "eigenvalue"])
        for i, v in enumerate(self.values, start=1):
            writer.writerow([i, repr(v)])
        return buf.getvalue()


# --- Jacobi eigensolver -----------------------------------------------------
#
# Cyclic Jacobi on a dense symmetric matrix. Two interchangeable sweep
# drivers: a numba-compiled scalar kernel (fast) and a vectorized numpy
# fallback. Both run the same rotations with the same thresholds.


def _sweeps_numpy(a: np.ndarray, thresh: float, skip: float, budget: int) -> int:
    n = a.shape[0]
    idx = np.arange(n)
    for sweep in range(budget):
        off = a.copy()
        off[idx, idx] = 0.0
        if np.linalg.norm(off) <= thresh:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e12:
                    t = 0.5 / tau
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    _sweeps_numba = None
else:

    @njit(cache=True)
    def _sweeps_numba(a, thresh, skip, budget):  # pragma: no cover - measured via wrapper
        n = a.shape[0]
        for sweep in range(budget):
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += 2.0 * a[p, q] * a[p, q]
            if math.sqrt(off) <= thresh:
                return sweep
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if abs(apq) <= skip:
                        continue
                    tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if abs(tau) > 1e12:
                        t = 0.5 / tau
                    else:
                        sign = 1.0 if tau >= 0.0 else -1.0
                        t = sign / (abs(tau) + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    for j in range(n):
                        rp = a[p, j]
                        rq = a[q, j]
                        a[p, j] = c * rp - s * rq
                        a[q, j] = s * rp + c * rq
                    for j in range(n):
                        cp = a[j, p]
                        cq = a[j, q]
                        a[j, p] = c * cp - s * cq
                        a[j, q] = s * cp + c * cq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
        return -1


USE_NUMBA = _sweeps_numba is not None


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError("matrix must have order >= 1")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    return a


def sym_eigenvalues(m: np.ndarray, tol: float = 1e-9) -> Spectrum:
    """All eigenvalues of a symmetric matrix, via cyclic Jacobi rotations."""
    a = _check_symmetric(m).copy()
    n = a.shape[0]
    if n == 1:
        return Spectrum([a[0, 0]], tol)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return Spectrum([0.0] * n, tol)
    thresh = OFF_NORM_FACTOR * norm
    skip = thresh / n
    driver = _sweeps_numba if USE_NUMBA else _sweeps_numpy
    sweeps = driver(a, thresh, skip, SWEEP_BUDGET)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi sweeps did not reach off-norm {thresh:g} within {SWEEP_BUDGET} sweeps"
        )
    return Spectrum(np.diagonal(a), tol)


def laplacian_spectrum(g: Graph, tol: float = 1e-9) -> Spectrum:
    return sym_eigenvalues(laplacian(g), tol)


def laplacian_energy(g: Graph) -> float:
    """Sum of |eigenvalue - average degree| over the Laplacian spectrum."""
    dbar = float(average_degree(g))
    return math.fsum(abs(v - dbar) for v in laplacian_spectrum(g))


def sigma_count(spectrum: Spectrum, dbar: float, tol: float = 1e-9) -> int:
    """Number of eigenvalues >= dbar, counting anything within tol below it."""
    return spectrum.count_at_least(dbar, tol)


def energy_report(g: Graph) -> dict:
    spec = laplacian_spectrum(g)
    dbar = average_degree(g)
    return {
        "n": g.n,
        "edges": g.num_edges,
        "avg_degree": float(dbar),
        "sigma": sigma_count(spec, float(dbar)),
        "energy": math.fsum(abs(v - float(dbar)) for v in spec),
    }


# --- tridiagonal closed form ------------------------------------------------


@dataclass(frozen=True)
class TridiagonalSpec:
    """Order-s tridiagonal Toeplitz matrix (sub/main/super constants a, b, c)
    with the top-left entry perturbed to b - alpha and the bottom-right to b - beta."""

    a: float
    b: float
    c: float
    alpha: float
    beta: float
    s: int

    def matrix(self) -> np.ndarray:
        if self.s < 1:
            raise ValueError(f"order must be >= 1, got {self.s}")
        m = np.zeros((self.s, self.s))
        np.fill_diagonal(m, self.b)
        for i in range(self.s - 1):
            m[i + 1, i] = self.a
            m[i, i + 1] = self.c
        m[0, 0] -= self.alpha
        m[self.s - 1, self.s - 1] -= self.beta
        return m


def tridiagonal_spectrum(t: TridiagonalSpec) -> Spectrum:
    """Closed-form spectrum {b + 2*alpha*cos(2j*pi/(2s+1)) : j=1..s}.

    Valid only for beta = 0 and alpha^2 = a*c with alpha nonzero.
    """
    if t.s < 1:
        raise ValueError(f"order must be >= 1, got {t.s}")
    if t.beta != 0:
        raise ValueError(f"closed form requires beta = 0, got beta={t.beta}")
    if t.alpha == 0 or abs(t.alpha * t.alpha - t.a * t.c) > 1e-12 * max(1.0, abs(t.a * t.c)):
        raise ValueError(
            f"closed form requires |alpha| = sqrt(a*c) != 0, got alpha={t.alpha}, a*c={t.a * t.c}"
        )
    vals = [t.b + 2.0 * t.alpha * math.cos(2.0 * j * math.pi / (2 * t.s + 1)) for j in range(1, t.s + 1)]
    return Spectrum(vals)


def replacement_spectra(k: int) -> tuple[Spectrum, Spectrum]:
    """The eigenvalue multisets removed and added when a cross edge joins the
    outer ends of two mirrored k-vertex path branches: ({2 + 2cos(2j*pi/(2k+1))},
    {2 - 2cos(2j*pi/(2k+1))}) for j = 1..k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    removed = tridiagonal_spectrum(TridiagonalSpec(-1, 2, -1, alpha=1, beta=0, s=k))
    added = tridiagonal_spectrum(TridiagonalSpec(-1, 2, -1, alpha=-1, beta=0, s=k))
    return removed, added


def linked_core_matrix(core: Graph, link: Sequence[int]) -> np.ndarray:
    """Laplacian of the core block plus 1 on the diagonal wherever the link
    vector attaches that vertex to the root."""
    if len(link) != core.n:
        raise ValueError(f"link vector length {len(link)} != core order {core.n}")
    if any(x not in (0, 1) for x in link):
        raise ValueError("link vector entries must be 0 or 1")
    m = laplacian(core)
    m[np.arange(core.n), np.arange(core.n)] += np.asarray(link, dtype=float)
    return m


# --- tolerance-aware multiset algebra ----------------------------------------


def multiset_remove(s: Spectrum, d: Spectrum, tol: float | None = None) -> Spectrum:
    """Remove one occurrence per element of d from s, matching greedily by
    nearest value; raises SpectrumMatchError if some element has no partner
    within tolerance."""
    t = s.tol if tol is None else tol
    remaining = list(s.values)
    for x in d.values:
        best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - x), default=None)
        if best is None or abs(remaining[best] - x) > t:
            raise SpectrumMatchError(f"no match for {x!r} within {t:g}")
        del remaining[best]
    return Spectrum(remaining, s.tol)


def multiset_union(s: Spectrum, f: Spectrum) -> Spectrum:
    return Spectrum(s.values + f.values, s.tol)


def cospectral(s1: Spectrum, s2: Spectrum, tol: float | None = None) -> bool:
    """True iff the two multisets have equal size and match pairwise after sorting."""
    t = max(s1.tol, s2.tol) if tol is None else tol
    if len(s1) != len(s2):
        return False
    return all(abs(x - y) <= t for x, y in zip(s1.values, s2.values))


def delta_le(g: Graph, g2: Graph, tol: float = 1e-9) -> float:
    """Laplacian-energy difference LE(g2) - LE(g) via the partial-sum formula
    2 * sum_{i<=sigma}(mu_i' - mu_i) - 4*sigma*(e' - e)/n.

    Both graphs must have the same vertex count and the same sigma (the number
    of eigenvalues >= their own average degree); otherwise the formula's
    hypothesis fails and SigmaMismatchError is raised.
    """
    if g.n != g2.n:
        raise ValueError(f"vertex counts differ: {g.n} != {g2.n}")
    s1 = laplacian_spectrum(g)
    s2 = laplacian_spectrum(g2)
    sig1 = sigma_count(s1, float(average_degree(g)), tol)
    sig2 = sigma_count(s2, float(average_degree(g2)), tol)
    if sig1 != sig2:
        raise SigmaMismatchError(f"sigma mismatch: {sig1} != {sig2}")
    delta_e = g2.num_edges - g.num_edges
    top = math.fsum(s2[i] - s1[i] for i in range(sig1))
    return 2.0 * top - 4.0 * sig1 * delta_e / g.n
