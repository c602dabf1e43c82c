"""Platform-independent 64-bit random streams.

The generator is xoshiro256** seeded through splitmix64, so every stream is a
bit-exact function of a single 64-bit seed:

* ``state[i] = splitmix64`` output ``i`` (``i = 0..3``) starting from ``seed``.
* ``next()`` is the reference xoshiro256** step.
* A uniform double is ``(next() >> 11) * 2**-53`` and lies in ``[0, 1)``.

Both a pure-Python class and numba kernels are provided; they produce the same
numbers (see ``tests/test_rng.py``).
"""

import numpy as np
from numba import njit, uint64

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV53 = 1.0 / 9007199254740992.0


def splitmix64(x):
    """One splitmix64 step. Returns ``(new_state, output)``."""
    x = (x + GOLDEN) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return x, z ^ (z >> 31)


def mix_seed(*parts):
    """Fold integers into one 64-bit seed.

    ``h = 0``; for each part: ``h = splitmix64_output(h ^ (part mod 2**64))``.
    Used to derive per-trial seeds from ``(master_seed, alpha_index, trial)``.
    """
    h = 0
    for part in parts:
        _, h = splitmix64(h ^ (int(part) & MASK64))
    return h


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** stream seeded by splitmix64."""

    def __init__(self, seed):
        x = int(seed) & MASK64
        s = []
        for _ in range(4):
            x, out = splitmix64(x)
            s.append(out)
        self.s = s

    def next_u64(self):
        s0, s1, s2, s3 = self.s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s = [s0, s1, s2, s3]
        return result

    def random(self):
        return (self.next_u64() >> 11) * _INV53

    def below(self, bound):
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


# --- numba versions -------------------------------------------------------

@njit(cache=True)
def _rotl_nb(x, k):
    return (x << uint64(k)) | (x >> uint64(64 - k))


@njit(cache=True)
def seed_state(seed):
    state = np.empty(4, dtype=np.uint64)
    x = uint64(seed)
    for i in range(4):
        x = x + uint64(GOLDEN)
        z = x
        z = (z ^ (z >> uint64(30))) * uint64(_MIX1)
        z = (z ^ (z >> uint64(27))) * uint64(_MIX2)
        state[i] = z ^ (z >> uint64(31))
    return state


@njit(cache=True)
def next_u64(state):
    s0 = state[0]
    s1 = state[1]
    s2 = state[2]
    s3 = state[3]
    result = _rotl_nb(s1 * uint64(5), 7) * uint64(9)
    t = s1 << uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl_nb(s3, 45)
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3
    return result


@njit(cache=True)
def next_double(state):
    return float(next_u64(state) >> uint64(11)) * _INV53
