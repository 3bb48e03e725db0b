"""Exact integer kernel: figurate numbers, integer roots, radix digits."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd as _gcd
from math import isqrt as _isqrt
from math import log2

_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"

# quadratic residues modulo 64, 63 and 65; a cheap rejection before isqrt
_SQ64 = frozenset(i * i % 64 for i in range(64))
_SQ63 = frozenset(i * i % 63 for i in range(63))
_SQ65 = frozenset(i * i % 65 for i in range(65))


def tri(n: int) -> int:
    """Triangular number n(n+1)/2, for any integer n."""
    return n * (n + 1) // 2


def tet(n: int) -> int:
    """Tetrahedral number n(n+1)(n+2)/6, for any integer n."""
    return n * (n + 1) * (n + 2) // 6


def tri_twin(n: int) -> int:
    """Canonical nonnegative index with the same triangular number (t_{-n} = t_{n-1})."""
    return n if n >= 0 else -n - 1


def isqrt(n: int) -> int:
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return _isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    if n % 64 not in _SQ64 or n % 63 not in _SQ63 or n % 65 not in _SQ65:
        return False
    r = _isqrt(n)
    return r * r == n


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, by integer Newton iteration."""
    if k < 1:
        raise ValueError(f"root degree must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"iroot of negative number {n}")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return _isqrt(n)
    # start above the root; Newton then decreases monotonically to the floor
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def is_kth_power(n: int, k: int) -> bool:
    if n < 0:
        return k % 2 == 1 and is_kth_power(-n, k)
    return iroot(n, k) ** k == n


def tri_index(m: int) -> int | None:
    """Smallest n >= 0 with tri(n) == m, or None."""
    if m < 0:
        return None
    d = 8 * m + 1
    r = _isqrt(d)
    if r * r != d:
        return None
    return (r - 1) // 2


def tet_index(m: int) -> int | None:
    """Smallest n >= 0 with tet(n) == m, or None."""
    if m < 0:
        return None
    # n^3 <= 6 tet(n) < (n+1)^3
    r = iroot(6 * m, 3)
    for n in range(max(r - 2, 0), r + 2):
        if tet(n) == m:
            return n
    return None


def gcd(a: int, b: int) -> int:
    return _gcd(a, b)


@dataclass(frozen=True)
class DigitString:
    """Radix-``base`` expansion, most significant digit first."""

    base: int
    digits: tuple[int, ...]

    @property
    def value(self) -> int:
        return _combine(self.digits, self.base, {})

    def is_palindrome(self) -> bool:
        return self.digits == self.digits[::-1]

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        if self.base <= len(_DIGIT_CHARS):
            return "".join(_DIGIT_CHARS[d] for d in self.digits)
        return "[" + ",".join(map(str, self.digits)) + "]"


def _combine(ds: tuple[int, ...], b: int, pow_cache: dict[int, int]) -> int:
    # Horner for short runs, halves joined by one multiplication otherwise
    if len(ds) <= 256:
        v = 0
        for d in ds:
            v = v * b + d
        return v
    half = len(ds) // 2
    p = pow_cache.get(half)
    if p is None:
        p = pow_cache[half] = b**half
    return _combine(ds[:-half], b, pow_cache) * p + _combine(ds[-half:], b, pow_cache)


def _check_base(b: int) -> None:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")


def _digits_small(n: int, b: int) -> list[int]:
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    return out[::-1]


def _digits_dc(n: int, b: int, width: int, pows: list[int]) -> list[int]:
    """Divide-and-conquer expansion padded to ``width`` digits; pows[i] = b**(2**i)."""
    if width <= 64:
        ds = _digits_small(n, b)
        return [0] * (width - len(ds)) + ds
    level = (width - 1).bit_length() - 1
    half = 1 << level
    hi, lo = divmod(n, pows[level])
    return _digits_dc(hi, b, width - half, pows) + _digits_dc(lo, b, half, pows)


def digits(n: int, b: int) -> DigitString:
    """Base-b digits of n >= 0 (no leading zeros; 0 -> "0")."""
    _check_base(b)
    if n < 0:
        raise ValueError(f"digits needs n >= 0, got {n}")
    if n == 0:
        return DigitString(b, (0,))
    if b & (b - 1) == 0:
        # power-of-two radix: read the binary string directly
        shift = b.bit_length() - 1
        bits = format(n, "b")
        pad = -len(bits) % shift
        bits = "0" * pad + bits
        ds = tuple(int(bits[i:i + shift], 2) for i in range(0, len(bits), shift))
        return DigitString(b, ds)
    if n.bit_length() <= 2048:
        return DigitString(b, tuple(_digits_small(n, b)))
    pows = [b]
    while pows[-1] * pows[-1] <= n:
        pows.append(pows[-1] * pows[-1])
    # number of digits: smallest w with b**w > n
    width = max(1, int(n.bit_length() / log2(b)))
    while b ** width <= n:
        width += 1
    while width > 1 and b ** (width - 1) > n:
        width -= 1
    ds = _digits_dc(n, b, width, pows)
    return DigitString(b, tuple(ds))


def is_palindrome(n: int, b: int) -> bool:
    _check_base(b)
    if n < 0:
        raise ValueError(f"is_palindrome needs n >= 0, got {n}")
    if b == 2:
        s = format(n, "b")
        return s == s[::-1]
    return digits(n, b).is_palindrome()


def reverse_digits(n: int, b: int) -> int:
    """Integer whose base-b digits are those of n reversed."""
    _check_base(b)
    if b == 2 and n >= 0:
        return int(format(n, "b")[::-1], 2)
    ds = digits(n, b).digits
    return DigitString(b, ds[::-1]).value
