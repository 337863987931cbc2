"""Finite binary words, the enumeration psi, the dense sequence s_n and
pairing arithmetic.

Words are plain ``str`` objects over ``'0'``/``'1'``.  Very long words that
are mostly zero (they show up in frame entries whose length is a tower of
pairings) use :class:`SparseWord`, which stores only the length and the
positions of the ones.
"""

from __future__ import annotations

from bisect import bisect_left
from functools import lru_cache
from math import isqrt
from typing import Iterable

MAX_NATURAL = (1 << 64) - 1


def _check_natural(x: int, name: str) -> None:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise ValueError(f"{name} must be a natural number, got {x!r}")


def _check_word(s: str) -> None:
    if not isinstance(s, str) or s.strip("01"):
        raise ValueError(f"not a binary word: {s!r}")


def psi(n: int) -> str:
    """Length-then-lexicographic enumeration of all finite words."""
    _check_natural(n, "n")
    return bin(n + 1)[3:]


def psi_inv(s: str) -> int:
    _check_word(s)
    return int("1" + s, 2) - 1


def sn(n: int) -> str:
    w = psi(n)
    return w + "0" * (n - len(w))


def pair(n: int, p: int, limit: int | None = MAX_NATURAL) -> int:
    """Cantor pairing <n, p> = (n+p)(n+p+1)/2 + p.

    ``limit=None`` lifts the 64-bit range check.
    """
    _check_natural(n, "n")
    _check_natural(p, "p")
    s = n + p
    q = s * (s + 1) // 2 + p
    if limit is not None and q > limit:
        raise OverflowError(f"<{n},{p}> exceeds {limit}")
    return q


def m_of(q: int) -> int:
    """Largest m with m(m+1)/2 <= q."""
    _check_natural(q, "q")
    m = (isqrt(8 * q + 1) - 1) // 2
    return m


def unpair(q: int) -> tuple[int, int]:
    m = m_of(q)
    p = q - m * (m + 1) // 2
    return m - p, p


def phi(n: int, p: int, limit: int | None = MAX_NATURAL) -> int:
    p0, p1 = unpair(p)
    return pair(pair(n, p0, limit), p1, limit)


def phi_inv(q: int) -> tuple[int, int]:
    a, b = unpair(q)
    a0, a1 = unpair(a)
    return a0, pair(a1, b, None)


def is_prefix(s: str, t: str) -> bool:
    return t.startswith(s)


def compatible(s: str, t: str) -> bool:
    return s.startswith(t) or t.startswith(s)


def words_of_length(n: int) -> list[str]:
    if n == 0:
        return [""]
    return [format(i, f"0{n}b") for i in range(1 << n)]


@lru_cache(maxsize=64)
def _words_cached(n: int) -> tuple[str, ...]:
    return tuple(words_of_length(n))


def all_words(n: int) -> tuple[str, ...]:
    """Cached tuple of all words of length n, in lexicographic order."""
    return _words_cached(n)


def xor_words(s: str, t: str) -> str:
    if len(s) != len(t):
        raise ValueError("xor of words of different lengths")
    return "".join("1" if a != b else "0" for a, b in zip(s, t))


class SparseWord:
    """A binary word given by its length and the sorted positions of its ones."""

    __slots__ = ("length", "ones")

    # refuse to materialise anything longer than this as a str
    MAX_DENSE = 1 << 22

    def __init__(self, length: int, ones: Iterable[int] = ()):
        ones = tuple(sorted(set(ones)))
        if length < 0 or (ones and (ones[0] < 0 or ones[-1] >= length)):
            raise ValueError("one-positions outside the word")
        self.length = length
        self.ones = ones

    @classmethod
    def of(cls, w: "str | SparseWord") -> "SparseWord":
        if isinstance(w, SparseWord):
            return w
        _check_word(w)
        return cls(len(w), (i for i, c in enumerate(w) if c == "1"))

    @classmethod
    def zeros(cls, n: int) -> "SparseWord":
        return cls(n, ())

    def __len__(self) -> int:
        # len() is capped at sys.maxsize, use .length for huge words
        return self.length

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            other = SparseWord.of(other)
        if not isinstance(other, SparseWord):
            return NotImplemented
        return self.length == other.length and self.ones == other.ones

    def __hash__(self) -> int:
        return hash((self.length, self.ones))

    def __repr__(self) -> str:
        if self.length <= 64:
            return f"SparseWord({self.to_str()!r})"
        return f"SparseWord(length={self.length}, ones={self.ones})"

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        k = bisect_left(self.ones, i)
        return int(k < len(self.ones) and self.ones[k] == i)

    def prefix(self, n: int) -> "SparseWord":
        if n > self.length:
            raise ValueError("prefix longer than word")
        return SparseWord(n, self.ones[: bisect_left(self.ones, n)])

    def suffix_from(self, start: int) -> "SparseWord":
        k = bisect_left(self.ones, start)
        return SparseWord(self.length - start, (i - start for i in self.ones[k:]))

    def __add__(self, other: "str | SparseWord") -> "SparseWord":
        other = SparseWord.of(other)
        shift = self.length
        return SparseWord(self.length + other.length,
                          self.ones + tuple(i + shift for i in other.ones))

    def pad(self, n: int) -> "SparseWord":
        return SparseWord(self.length + n, self.ones)

    def is_prefix_of(self, other: "str | SparseWord") -> bool:
        other = SparseWord.of(other)
        if self.length > other.length:
            return False
        return other.prefix(self.length).ones == self.ones

    def ones_in(self, lo: int, hi: int) -> tuple[int, ...]:
        return self.ones[bisect_left(self.ones, lo):bisect_left(self.ones, hi)]

    def stripped_length(self) -> int:
        """Length after removing trailing zeros."""
        return self.ones[-1] + 1 if self.ones else 0

    def value(self) -> int:
        """Big-endian integer value (first bit most significant)."""
        v = 0
        for i in self.ones:
            v |= 1 << (self.length - 1 - i)
        return v

    def to_str(self) -> str:
        if self.length > self.MAX_DENSE:
            raise OverflowError(f"word of length {self.length} is too long to print")
        out = ["0"] * self.length
        for i in self.ones:
            out[i] = "1"
        return "".join(out)


def last_difference(a: "str | SparseWord", b: "str | SparseWord") -> int | None:
    """Last position where two equal-length words differ, or None."""
    if isinstance(a, str) and isinstance(b, str):
        if len(a) != len(b):
            raise ValueError("words of different lengths")
        for i in range(len(a) - 1, -1, -1):
            if a[i] != b[i]:
                return i
        return None
    a, b = SparseWord.of(a), SparseWord.of(b)
    if a.length != b.length:
        raise ValueError("words of different lengths")
    diff = set(a.ones).symmetric_difference(b.ones)
    return max(diff) if diff else None
