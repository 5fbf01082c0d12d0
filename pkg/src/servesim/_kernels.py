"""Hot-path kernels: token-hash embedding, Gittins scan, match counting.

Each kernel has a numba-compiled version and a pure-numpy fallback with
identical semantics; integer hashing is exact in both so embeddings are
bit-identical across paths and platforms.
"""

from __future__ import annotations

import warnings

import numpy as np

# numba's TBB probe warns on mismatched TBB versions; the workqueue layer it
# falls back to is fine for these kernels.
warnings.filterwarnings(
    "ignore", message="The TBB threading layer requires TBB version"
)

try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap

    prange = range

_PHI = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_C1 = np.uint64(0x2545F4914F6CDD1D)
_C2 = np.uint64(0xD6E8FEB86659FD93)
_U64 = np.uint64


def _mix_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U64(30))) * _M1
    z = (z ^ (z >> _U64(27))) * _M2
    return z ^ (z >> _U64(31))


def _ngram_hashes_np(tokens: np.ndarray, salt: int) -> np.ndarray:
    """All 1-gram and 2-gram hashes of a token sequence (uint64)."""
    t = tokens.astype(np.uint64)
    uni = _mix_np(_U64(salt) ^ (t * _PHI + _C1))
    if t.size < 2:
        return uni
    bi = _mix_np(uni[:-1] ^ (uni[1:] * _PHI + _C2))
    return np.concatenate([uni, bi])


def embed_accumulate_np(tokens: np.ndarray, salt: int, dim: int) -> np.ndarray:
    h = _ngram_hashes_np(tokens, salt)
    buckets = (h % _U64(dim)).astype(np.int64)
    signs = 1.0 - 2.0 * ((h >> _U64(61)) & _U64(1)).astype(np.float64)
    return np.bincount(buckets, weights=signs, minlength=dim)


if HAVE_NUMBA:

    @njit(cache=True)
    def _embed_accumulate_nb(tokens, salt, dim):  # pragma: no cover - numba
        out = np.zeros(dim, dtype=np.float64)
        n = tokens.shape[0]
        prev = _U64(0)
        for i in range(n):
            t = _U64(tokens[i])
            u = _U64(salt) ^ (t * _PHI + _C1)
            u = (u ^ (u >> _U64(30))) * _M1
            u = (u ^ (u >> _U64(27))) * _M2
            u = u ^ (u >> _U64(31))
            b = u % _U64(dim)
            if (u >> _U64(61)) & _U64(1):
                out[b] -= 1.0
            else:
                out[b] += 1.0
            if i > 0:
                g = prev ^ (u * _PHI + _C2)
                g = (g ^ (g >> _U64(30))) * _M1
                g = (g ^ (g >> _U64(27))) * _M2
                g = g ^ (g >> _U64(31))
                b2 = g % _U64(dim)
                if (g >> _U64(61)) & _U64(1):
                    out[b2] -= 1.0
                else:
                    out[b2] += 1.0
            prev = u
        return out

    def embed_accumulate(tokens: np.ndarray, salt: int, dim: int) -> np.ndarray:
        return _embed_accumulate_nb(
            np.ascontiguousarray(tokens, dtype=np.int64), salt, dim
        )

    @njit(cache=True)
    def gittins_min(support, masses):  # pragma: no cover - numba
        n = support.shape[0]
        cum_p = 0.0
        cum_xp = 0.0
        best = np.inf
        for k in range(n):
            cum_p += masses[k]
            cum_xp += support[k] * masses[k]
            ratio = (cum_xp + support[k] * (1.0 - cum_p)) / cum_p
            if ratio < best:
                best = ratio
        return best

    @njit(parallel=True, cache=True)
    def match_pmfs(sims, lens, theta, max_len, sup, mas, sizes):  # pragma: no cover
        nq = sims.shape[0]
        nw = sims.shape[1]
        for q in prange(nq):
            counts = np.zeros(max_len + 1, dtype=np.int64)
            total = 0
            for j in range(nw):
                if sims[q, j] >= theta:
                    counts[lens[j]] += 1
                    total += 1
            k = 0
            if total > 0:
                inv = 1.0 / total
                for v in range(1, max_len + 1):
                    c = counts[v]
                    if c > 0:
                        sup[q, k] = v
                        mas[q, k] = c * inv
                        k += 1
            sizes[q] = k

else:

    def embed_accumulate(tokens: np.ndarray, salt: int, dim: int) -> np.ndarray:
        return embed_accumulate_np(np.asarray(tokens, dtype=np.int64), salt, dim)

    def gittins_min(support, masses):
        cum_p = np.cumsum(masses)
        cum_xp = np.cumsum(support * masses)
        ratios = (cum_xp + support * (1.0 - cum_p)) / cum_p
        return float(ratios.min())

    def match_pmfs(sims, lens, theta, max_len, sup, mas, sizes):
        nq = sims.shape[0]
        for q in range(nq):
            hit = sims[q] >= theta
            matched = lens[hit]
            if matched.size == 0:
                sizes[q] = 0
                continue
            counts = np.bincount(matched, minlength=max_len + 1)
            values = np.flatnonzero(counts)
            k = values.size
            sup[q, :k] = values
            mas[q, :k] = counts[values] / matched.size
            sizes[q] = k


def warmup() -> None:
    """Trigger numba JIT compilation outside of timed sections."""
    toks = np.arange(4, dtype=np.int64)
    embed_accumulate(toks, 1, 8)
    gittins_min(np.array([1.0, 2.0]), np.array([0.5, 0.5]))
    sims = np.ones((1, 2), dtype=np.float32)
    lens = np.array([1, 2], dtype=np.int64)
    sup = np.zeros((1, 2))
    mas = np.zeros((1, 2))
    sizes = np.zeros(1, dtype=np.int64)
    match_pmfs(sims, lens, np.float32(0.5), 2, sup, mas, sizes)
