"""Finitely supported complex sequences on the integers."""

from __future__ import annotations

import numpy as np

__all__ = ["FiniteSequence"]


class FiniteSequence:
    """A complex sequence on Z that vanishes outside ``[offset, offset + len - 1]``.

    Instances are immutable. Equality compares canonical forms, so leading and
    trailing zeros (and the offset they imply) do not matter.
    """

    __slots__ = ("offset", "values")

    def __init__(self, offset=0, values=()):
        vals = np.array(values, dtype=complex).ravel()
        vals.setflags(write=False)
        object.__setattr__(self, "offset", int(offset))
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSequence is immutable")

    # constructors

    @classmethod
    def delta(cls, k=0, amplitude=1.0):
        return cls(k, [amplitude])

    @classmethod
    def zeros(cls):
        return cls(0, [])

    @classmethod
    def from_dict(cls, entries):
        """Build from a mapping ``{index: value}``."""
        if not entries:
            return cls.zeros()
        lo, hi = min(entries), max(entries)
        vals = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in entries.items():
            vals[k - lo] = v
        return cls(lo, vals)

    @classmethod
    def from_indexed(cls, indices, values):
        """Build from parallel arrays; repeated indices are summed."""
        indices = np.asarray(indices, dtype=np.int64)
        values = np.asarray(values, dtype=complex)
        if indices.size == 0:
            return cls.zeros()
        lo = int(indices.min())
        n = int(indices.max()) - lo + 1
        re = np.bincount(indices - lo, weights=values.real, minlength=n)
        im = np.bincount(indices - lo, weights=values.imag, minlength=n)
        return cls(lo, re + 1j * im)

    # basic properties

    def __len__(self):
        return self.values.size

    @property
    def indices(self):
        return np.arange(self.offset, self.offset + self.values.size)

    @property
    def last(self):
        return self.offset + self.values.size - 1

    def is_zero(self):
        return not np.any(self.values)

    def support(self):
        """Indices of the nonzero entries."""
        return self.indices[self.values != 0]

    def nonzero_items(self):
        """``(indices, values)`` restricted to nonzero entries."""
        mask = self.values != 0
        return self.indices[mask], self.values[mask]

    def __getitem__(self, n):
        j = int(n) - self.offset
        if 0 <= j < self.values.size:
            return complex(self.values[j])
        return 0j

    def at(self, indices):
        """Vectorized lookup; indices outside the stored window give 0."""
        idx = np.asarray(indices, dtype=np.int64) - self.offset
        out = np.zeros(idx.shape, dtype=complex)
        ok = (idx >= 0) & (idx < self.values.size)
        out[ok] = self.values[idx[ok]]
        return out

    def canonical(self):
        nz = np.flatnonzero(self.values)
        if nz.size == 0:
            return FiniteSequence.zeros()
        return FiniteSequence(self.offset + nz[0], self.values[nz[0]:nz[-1] + 1])

    def trim(self, floor):
        """Drop leading/trailing entries with modulus ``<= floor``."""
        big = np.flatnonzero(np.abs(self.values) > floor)
        if big.size == 0:
            return FiniteSequence.zeros()
        return FiniteSequence(self.offset + big[0], self.values[big[0]:big[-1] + 1])

    # algebra

    def _aligned(self, other):
        if len(self) == 0:
            return other.offset, np.zeros(len(other), complex), other.values
        if len(other) == 0:
            return self.offset, self.values, np.zeros(len(self), complex)
        lo = min(self.offset, other.offset)
        hi = max(self.last, other.last)
        idx = np.arange(lo, hi + 1)
        return lo, self.at(idx), other.at(idx)

    def __add__(self, other):
        lo, x, y = self._aligned(other)
        return FiniteSequence(lo, x + y)

    def __sub__(self, other):
        lo, x, y = self._aligned(other)
        return FiniteSequence(lo, x - y)

    def __mul__(self, scalar):
        return FiniteSequence(self.offset, self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return FiniteSequence(self.offset, -self.values)

    def shift(self, j):
        """``(T_j a)(n) = a(n - j)``."""
        return FiniteSequence(self.offset + int(j), self.values)

    def reflect(self):
        """``a'(n) = a(-n)``."""
        return FiniteSequence(-self.last, self.values[::-1])

    def modulus(self):
        return np.abs(self.values)

    def __eq__(self, other):
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.offset == b.offset and np.array_equal(a.values, b.values)

    def __hash__(self):
        c = self.canonical()
        return hash((c.offset, c.values.tobytes()))

    def __repr__(self):
        return f"FiniteSequence(offset={self.offset}, values={self.values.tolist()!r})"

    # serialization

    def to_json(self):
        return {
            "offset": self.offset,
            "values": [[float(z.real), float(z.imag)] for z in self.values],
        }

    @classmethod
    def from_json(cls, obj):
        vals = [complex(re, im) for re, im in obj["values"]]
        return cls(obj["offset"], vals)
