"""N-photon coincidence correlation functions for the emitter chain.

With every emitter initially excited, the probability density for registering
one photon at each of N detectors is

    G(delta_1, ..., delta_N) = |gamma|^2 / N^N,

where gamma collects the interference of the N! ways the N photons can be
assigned to the N detectors.  Writing ``M[a, i] = exp(-1j * j_a * delta_i)``
(emitter index ``a`` as row, detector index ``i`` as column, ``j_a`` the
half-integer emitter positions), gamma is exactly the permanent of M.

Three independent evaluation routes are provided so they can check each other:

* :func:`gamma_naive` - literal sum over all N! permutations, O(N! * N).
* :func:`gamma_ryser` - Ryser's inclusion-exclusion over column subsets,
  O(2^N * N), enumerated in Gray-code order with a fixed accumulation order.
* :func:`g_n_cosine_sum` - the manifestly real form
  ``gamma = sum_perm cos(j_perm . delta)``, valid because the symmetric
  emitter ladder pairs every permutation with its sign-reversed partner.

:func:`g_n` is the public entry point and dispatches to the cheapest exact
route for the given N.

For emitters prepared in the balanced single-atom superposition instead, the
first-order function :func:`g1_superposition` is the classical N-slit grating
curve; :func:`g1_spin_oracle` recomputes it by brute force on the full
2^N-amplitude product state and exists purely as a cross-check.
"""

from __future__ import annotations

import functools
import itertools
import math

import numpy as np

from .errors import CapExceededError
from .geometry import AtomChain

__all__ = [
    "NAIVE_CAP",
    "RYSER_CAP",
    "SPIN_ORACLE_CAP",
    "gamma_naive",
    "gamma_ryser",
    "g_n",
    "g_n_batch",
    "g_n_cosine_sum",
    "g1_superposition",
    "g1_spin_oracle",
]

# Size caps keep every route at desk scale: the factorial route is capped where
# the permutation table stops fitting comfortably in memory, the subset route
# where 2^N stops being a few-second computation.
NAIVE_CAP = 9
RYSER_CAP = 30
SPIN_ORACLE_CAP = 12

# Below this N the Ryser sum runs in extended precision.  Its large
# inclusion-exclusion terms cancel down to O(N!) results, which costs ~5
# decimal digits at N=8 in plain double precision; the subset count (< 4096)
# is small enough that 80-bit arithmetic is essentially free here.
_EXTENDED_CAP = 12
_RYSER_CHUNK = 1 << 14


def _check_phases(chain: AtomChain, phases) -> np.ndarray:
    arr = np.asarray(phases, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != chain.n_atoms:
        raise ValueError(
            f"need exactly {chain.n_atoms} detector phases, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("detector phases must all be finite")
    return arr


@functools.lru_cache(maxsize=None)
def _perm_columns(n: int) -> np.ndarray:
    """All permutations of range(n) as an (n!, n) index array."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


@functools.lru_cache(maxsize=None)
def _perm_j(n: int) -> np.ndarray:
    """All permutations of the j-ladder as an (n!, n) float array."""
    j = np.arange(n) - (n - 1) / 2.0
    return np.array(list(itertools.permutations(j)))


@functools.lru_cache(maxsize=None)
def _gray_bits(n: int) -> np.ndarray:
    """Column-membership bits of the non-empty subsets in Gray-code order."""
    k = np.arange(1, 1 << n, dtype=np.int64)
    gray = k ^ (k >> 1)
    return ((gray[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int8)


def gamma_naive(chain: AtomChain, phases, *, cap: int = NAIVE_CAP) -> complex:
    """Interference sum gamma by literal enumeration of all N! photon routings.

    Parameters
    ----------
    chain : AtomChain
    phases : array_like
        Detector phases (delta_1, ..., delta_N), radians.
    cap : int
        Refuse above this N; the cost is O(N! * N).

    Returns
    -------
    complex
        gamma; its imaginary part is zero up to rounding because the
        symmetric j-ladder pairs every term with its complex conjugate.
    """
    delta = _check_phases(chain, phases)
    n = chain.n_atoms
    if n > cap:
        raise CapExceededError(f"gamma_naive: N={n} exceeds cap {cap} (N! growth)")
    m = np.exp(-1j * np.outer(chain.j, delta))
    cols = _perm_columns(n)
    terms = m[np.arange(n)[None, :], cols]
    return complex(terms.prod(axis=1).sum())


def gamma_ryser(chain: AtomChain, phases, *, cap: int = RYSER_CAP) -> complex:
    """Interference sum gamma as a permanent via Ryser's subset formula.

    ``perm(M) = sum over non-empty column subsets S of
    (-1)^(N-|S|) * prod_a (sum_{i in S} M[a, i])``, evaluated over subsets in
    Gray-code order with a fixed chunked accumulation order, O(2^N * N).
    Small N runs in extended precision (see module notes); the result is
    returned as an ordinary complex double either way.
    """
    delta = _check_phases(chain, phases)
    n = chain.n_atoms
    if n > cap:
        raise CapExceededError(f"gamma_ryser: N={n} exceeds cap {cap} (2^N growth)")
    if n <= _EXTENDED_CAP:
        m = np.exp(np.asarray(-1j * np.outer(chain.j, delta), dtype=np.clongdouble))
        bits = _gray_bits(n)
        rowsums = bits.astype(np.clongdouble) @ m.T
        prods = rowsums.prod(axis=1)
        parity = (n - bits.sum(axis=1, dtype=np.int64)) & 1
        signs = (1 - 2 * parity).astype(np.longdouble)
        return complex((signs * prods).sum())
    m = np.exp(-1j * np.outer(chain.j, delta))
    shifts = np.arange(n, dtype=np.int64)
    total = 0.0 + 0.0j
    for start in range(1, 1 << n, _RYSER_CHUNK):
        k = np.arange(start, min(start + _RYSER_CHUNK, 1 << n), dtype=np.int64)
        gray = k ^ (k >> 1)
        bits = ((gray[:, None] >> shifts[None, :]) & 1).astype(np.float64)
        rowsums = bits.astype(np.complex128) @ m.T
        prods = rowsums.prod(axis=1)
        parity = (n - bits.sum(axis=1).astype(np.int64)) & 1
        total += ((1.0 - 2.0 * parity) * prods).sum()
    return complex(total)


def g_n(chain: AtomChain, phases) -> float:
    """Coincidence correlation G = |gamma|^2 / N^N.

    Dispatches to the permutation sum for very small N and to the Ryser route
    otherwise; both are exact, and the slower forms remain available for
    cross-checks.
    """
    n = chain.n_atoms
    gamma = gamma_naive(chain, phases) if n <= 5 else gamma_ryser(chain, phases)
    return abs(gamma) ** 2 / n**n


def g_n_batch(chain: AtomChain, phase_matrix) -> np.ndarray:
    """G for many detector-phase vectors at once.

    Parameters
    ----------
    chain : AtomChain
    phase_matrix : array_like, shape (batch, N)
        One phase vector per row.

    Returns
    -------
    numpy.ndarray, shape (batch,)
        Same values as mapping :func:`g_n` over the rows.  For N within the
        factorial cap this is a single vectorized cosine sum; above it, rows
        fall back to one Ryser evaluation each (cost grows as 2^N per row).
    """
    arr = np.asarray(phase_matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != chain.n_atoms:
        raise ValueError(
            f"need a (batch, {chain.n_atoms}) phase matrix, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("detector phases must all be finite")
    n = chain.n_atoms
    if n > RYSER_CAP:
        raise CapExceededError(f"g_n_batch: N={n} exceeds cap {RYSER_CAP} (2^N growth)")
    if n <= NAIVE_CAP:
        gammas = np.cos(arr @ _perm_j(n).T).sum(axis=1)
        return gammas * gammas / float(n**n)
    return np.array([abs(gamma_ryser(chain, row)) ** 2 / n**n for row in arr])


def g_n_cosine_sum(chain: AtomChain, phases, *, cap: int = NAIVE_CAP) -> float:
    """G from the manifestly real cosine form of the interference sum.

    ``gamma = sum over permutations pi of cos(j_pi . delta)``: the symmetric
    emitter ladder maps every permutation onto its negated partner, collapsing
    conjugate phase-factor pairs into cosines.  Same O(N!) cost and cap as the
    naive route; kept as the third independent cross-check.
    """
    delta = _check_phases(chain, phases)
    n = chain.n_atoms
    if n > cap:
        raise CapExceededError(f"g_n_cosine_sum: N={n} exceeds cap {cap} (N! growth)")
    gamma = np.cos(_perm_j(n) @ delta).sum()
    return float(gamma * gamma) / float(n**n)


def g1_superposition(chain: AtomChain, delta1):
    """First-order correlation with every emitter in the balanced superposition.

    Preparing each emitter in (|g> + |e>)/sqrt(2) gives the single-detector
    signal the closed grating form

        G1(delta_1) = 1/2 * [1 + (1/N) * sum_{a=1}^{N-1} (N-a) cos(a delta_1)],

    the classical N-slit curve: principal maxima of height (N+1)/4 at
    delta_1 in 2*pi*Z, and N-2 secondary maxima between them.

    Parameters
    ----------
    chain : AtomChain
    delta1 : float or array_like
        Detector phase(s), radians.

    Returns
    -------
    float or numpy.ndarray
        Scalar for scalar input, array for array input.
    """
    n = chain.n_atoms
    d = np.asarray(delta1, dtype=float)
    alpha = np.arange(1, n)
    s = ((n - alpha) * np.cos(np.multiply.outer(d, alpha))).sum(axis=-1)
    out = 0.5 * (1.0 + s / n)
    return float(out) if np.isscalar(delta1) or d.ndim == 0 else out


def g1_spin_oracle(chain: AtomChain, delta1: float, *, cap: int = SPIN_ORACLE_CAP) -> float:
    """Brute-force check of :func:`g1_superposition` on the full product state.

    Builds the 2^N-amplitude state with every emitter in (|g> + |e>)/sqrt(2)
    and evaluates <D+ D> for the single-detector operator
    ``D = (1/sqrt(N)) * sum_a exp(-1j * j_a * delta_1) * sigma-_a`` by summing
    the pair expectations <sigma+_a sigma-_b> over the explicit amplitudes,
    using bit operations to apply the ladder operators.  Exponential in N and
    deliberately independent of the closed form.
    """
    n = chain.n_atoms
    if n > cap:
        raise CapExceededError(f"g1_spin_oracle: N={n} exceeds cap {cap} (2^N state)")
    coef = np.exp(-1j * chain.j * float(delta1))
    dim = 1 << n
    psi = np.full(dim, 2.0 ** (-0.5 * n))
    states = np.arange(dim)
    acc = 0.0 + 0.0j
    for a in range(n):
        bit_a = 1 << a
        for b in range(n):
            # <sigma+_a sigma-_b>: lower spin b, then raise spin a.
            x = states[(states >> b) & 1 == 1]
            y = x & ~(1 << b)
            keep = (y >> a) & 1 == 0
            z = y[keep] | bit_a
            acc += np.conj(coef[a]) * coef[b] * np.dot(psi[z], psi[x[keep]])
    return float(acc.real) / n
