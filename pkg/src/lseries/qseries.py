"""Exact truncated q-series arithmetic.

A QSeries stores the coefficients of a power series in q starting at
exponent ``lead``: entry ``coeffs[i]`` is the coefficient of q**(lead+i),
and exactly ``cutoff`` entries are stored.  All arithmetic is exact
(Python integers, or Fractions when a caller introduces denominators) and
never reads beyond the stored window, so truncation is explicit rather
than accidental.

Fractional leading exponents (q**(1/24) from eta factors) are never
stored; callers track them separately and only whole-power series live
here.  Products of the eta/theta building blocks used downstream keep
integer coefficients throughout; the Fraction fallback exists for small
exploratory series and tests.

Multiplication of large integer series is done by Kronecker substitution:
pack each operand into a single big integer at a digit width that the
convolution cannot overflow, multiply once, and unpack.  CPython's
subquadratic big-int multiply makes this far faster than a Python-level
convolution loop at the sizes used here (cutoffs up to ~10^4).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

try:  # GMP-backed integers multiply far faster at megabit sizes
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - plain ints are a correct fallback
    _mpz = int


@dataclass(frozen=True)
class QSeries:
    """Truncated power series sum(coeffs[i] * q**(lead+i), i < cutoff)."""

    lead: int
    coeffs: tuple


    @property
    def cutoff(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, exponent: int):
        """Coefficient of q**exponent; raises if outside the stored window."""
        i = exponent - self.lead
        if not 0 <= i < len(self.coeffs):
            raise IndexError(f"coefficient of q^{exponent} not stored "
                             f"(window [{self.lead}, {self.lead + self.cutoff}))")
        return self.coeffs[i]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)


def qseries(coeffs: Sequence, lead: int = 0) -> QSeries:
    """Build a QSeries from a plain coefficient sequence."""
    return QSeries(lead, tuple(coeffs))


def qseries_one(M: int) -> QSeries:
    """The constant series 1, stored to M terms."""
    return QSeries(0, (1,) + (0,) * (M - 1))


def eta_qexp(M: int) -> QSeries:
    """q-part of the eta function: prod(1-q^n) = sum (-1)^n q^(n(3n+1)/2).

    The pentagonal-number expansion, without the q**(1/24) prefactor
    (tracked by callers).  Stored to M terms, lead 0.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    out = [0] * M
    n = 0
    while True:
        hit = False
        for e in (n * (3 * n + 1) // 2, n * (3 * n - 1) // 2):
            if e < M:
                out[e] = -1 if n % 2 else 1
                hit = True
        if not hit:
            break
        n += 1
    return QSeries(0, tuple(out))


def theta_qexp(M: int) -> QSeries:
    """theta(z) = 1 + 2 sum q^(n^2), stored to M terms."""
    if M < 1:
        raise ValueError("M must be >= 1")
    out = [0] * M
    out[0] = 1
    n = 1
    while n * n < M:
        out[n * n] = 2
        n += 1
    return QSeries(0, tuple(out))


def qseries_dilate(a: QSeries, k: int, M: int) -> QSeries:
    """Substitute q -> q^k (index stretching), truncated to M terms."""
    if k < 1:
        raise ValueError("dilation factor must be >= 1")
    out = [0] * M
    for i, c in enumerate(a.coeffs):
        if k * i >= M:
            break
        out[k * i] = c
    return QSeries(k * a.lead, tuple(out))


def _kronecker_mul(a: list, b: list, M: int) -> list:
    """Convolution of integer coefficient lists, truncated to M entries."""
    if not a or not b:
        return [0] * M
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    if amax == 0 or bmax == 0:
        return [0] * M
    # Any convolution entry is a sum of at most min(len(a), len(b)) products.
    bound = amax * bmax * min(len(a), len(b))
    width = bound.bit_length() // 8 + 1  # bytes per slot, keeps slots carry-free

    def pack(v: list) -> tuple[int, int]:
        pos = bytearray(len(v) * width)
        neg = bytearray(len(v) * width)
        for i, c in enumerate(v):
            if c > 0:
                pos[i * width:(i + 1) * width] = c.to_bytes(width, "little")
            elif c < 0:
                neg[i * width:(i + 1) * width] = (-c).to_bytes(width, "little")
        return _mpz(int.from_bytes(pos, "little")), _mpz(int.from_bytes(neg, "little"))

    ta, tb = a[:M], b[:M]
    apos, aneg = pack(ta)
    bpos, bneg = pack(tb)
    total = (len(ta) + len(tb)) * width + 16
    pbuf = int(apos * bpos + aneg * bneg).to_bytes(total, "little")
    mbuf = int(apos * bneg + aneg * bpos).to_bytes(total, "little")
    out = []
    for i in range(M):
        lo = i * width
        hi = lo + width
        out.append(int.from_bytes(pbuf[lo:hi], "little") -
                   int.from_bytes(mbuf[lo:hi], "little"))
    return out


def _naive_mul(a: list, b: list, M: int) -> list:
    out = [0] * M
    for i, ca in enumerate(a):
        if i >= M:
            break
        if not ca:
            continue
        top = min(M - i, len(b))
        for j in range(top):
            if b[j]:
                out[i + j] += ca * b[j]
    return out


def qseries_mul(a: QSeries, b: QSeries, M: int) -> QSeries:
    """Cauchy product truncated to M terms; lead = a.lead + b.lead."""
    la, lb = list(a.coeffs), list(b.coeffs)
    if a.cutoff < M or b.cutoff < M:
        # The product window is only valid as far as both operands reach.
        avail = min(a.cutoff, b.cutoff)
        if avail < M:
            raise ValueError(f"operands only support {avail} product terms, {M} requested")
    if a.is_integral() and b.is_integral():
        out = _kronecker_mul(la, lb, M)
    else:
        la = [Fraction(c) for c in la]
        lb = [Fraction(c) for c in lb]
        out = _naive_mul(la, lb, M)
    return QSeries(a.lead + b.lead, tuple(out))


def qseries_pow(a: QSeries, e: int, M: int) -> QSeries:
    """a**e truncated to M terms, by binary powering."""
    if e < 1:
        raise ValueError("exponent must be a positive integer")
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else qseries_mul(result, base, M)
        e >>= 1
        if not e:
            break
        base = qseries_mul(base, base, M)
    return result


def qseries_inv(a: QSeries, M: int) -> QSeries:
    """Multiplicative inverse: returns b with a*b = 1 + O(q^M).

    Requires unit constant term 1 (after which the inverse of an integer
    series is again integral).  Newton iteration doubles the number of
    correct terms per step, each step one truncated multiplication.
    """
    if a.cutoff < M:
        raise ValueError(f"need {M} terms of the operand, have {a.cutoff}")
    if not a.coeffs or a.coeffs[0] != 1:
        raise ValueError("series not invertible: constant term must be 1")
    # b <- b*(2 - a*b), starting from the constant inverse.
    b = [1]
    known = 1
    acoeffs = list(a.coeffs)
    integral = a.is_integral()
    while known < M:
        known = min(2 * known, M)
        awin = acoeffs[:known]
        if integral:
            ab = _kronecker_mul(awin, b, known)
            corr = [-c for c in ab]
            corr[0] += 2
            b = _kronecker_mul(b, corr, known)
        else:
            awin = [Fraction(c) for c in awin]
            ab = _naive_mul(awin, [Fraction(c) for c in b], known)
            corr = [-c for c in ab]
            corr[0] += 2
            b = _naive_mul([Fraction(c) for c in b], corr, known)
    return QSeries(0, tuple(b[:M]))


def qseries_add(a: QSeries, b: QSeries, M: int) -> QSeries:
    """Sum truncated to M terms measured from the smaller lead."""
    lead = min(a.lead, b.lead)
    out = [0] * M
    for s in (a, b):
        off = s.lead - lead
        for i, c in enumerate(s.coeffs):
            if off + i >= M:
                break
            out[off + i] += c
    return QSeries(lead, tuple(out))


def qseries_scale(a: QSeries, factor) -> QSeries:
    """Multiply every coefficient by a scalar (int or Fraction)."""
    return QSeries(a.lead, tuple(c * factor for c in a.coeffs))
