"""Concrete element representations.

Each representation knows how to multiply two elements, invert one and
print a display name.  Elements are plain hashable tuples so closures can
use them as dictionary keys.  The product ``mul(a, b)`` always means
"a first, then b"; for permutations that is ``(ab)(i) = b(a(i))`` and for
matrices it is the ordinary product ``a @ b``.
"""

from __future__ import annotations

import re

__all__ = [
    "PermutationRep",
    "SL2Rep",
    "HeisenbergRep",
    "QuaternionRep",
    "format_cycles",
    "parse_cycles",
]


def format_cycles(perm: tuple[int, ...]) -> str:
    """Cycle notation with 1-based points, ``()`` for the identity."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(str(i + 1))
            i = perm[i]
        out.append("(" + " ".join(cycle) + ")")
    return "".join(out) or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse ``"(1 2 3)(4 5)"`` into an image tuple on 0-based points.

    Cycles are composed left to right, so the leftmost cycle acts first.
    Points may be separated by spaces or commas.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    cycles = []
    pos = 0
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"unexpected text in permutation {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(p) for p in body]
        except ValueError:
            raise ValueError(f"non-integer point in {text!r}") from None
        if any(p < 1 for p in pts):
            raise ValueError(f"points are 1-based in {text!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle of {text!r}")
        cycles.append(pts)
    if text[pos:].strip():
        raise ValueError(f"unexpected text in permutation {text!r}")
    top = max((p for c in cycles for p in c), default=0)
    if degree is None:
        degree = top
    elif top > degree:
        raise ValueError(f"point {top} exceeds degree {degree}")
    perm = list(range(degree))
    for c in cycles:
        step = list(range(degree))
        for a, b in zip(c, c[1:] + c[:1]):
            step[a - 1] = b - 1
        perm = [step[perm[i]] for i in range(degree)]
    return tuple(perm)


class PermutationRep:
    """Permutations of ``{0, ..., degree-1}`` stored as image tuples."""

    kind = "perm"

    def __init__(self, degree: int):
        self.degree = degree

    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        return tuple(b[i] for i in a)

    def inverse(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def name(self, a) -> str:
        return format_cycles(a)

    def parse(self, text: str):
        return parse_cycles(text, self.degree)


class SL2Rep:
    """2x2 matrices of determinant one over the prime field F_p.

    A matrix ``[[a, b], [c, d]]`` is stored as ``(a, b, c, d)``.
    """

    kind = "matrix"

    def __init__(self, p: int):
        self.p = p

    def identity(self):
        return (1, 0, 0, 1)

    def mul(self, x, y):
        p = self.p
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p,
                (c * e + d * g) % p, (c * f + d * h) % p)

    def inverse(self, x):
        a, b, c, d = x
        p = self.p
        return (d % p, -b % p, -c % p, a % p)

    def name(self, x) -> str:
        a, b, c, d = x
        return f"[[{a},{b}],[{c},{d}]]"


class HeisenbergRep:
    """Upper unitriangular 3x3 matrices over F_p.

    ``(a, b, c)`` encodes ``[[1, a, c], [0, 1, b], [0, 0, 1]]``.
    """

    kind = "matrix"

    def __init__(self, p: int):
        self.p = p

    def identity(self):
        return (0, 0, 0)

    def mul(self, x, y):
        p = self.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p,
                (x[2] + y[2] + x[0] * y[1]) % p)

    def inverse(self, x):
        p = self.p
        a, b, c = x
        return (-a % p, -b % p, (a * b - c) % p)

    def name(self, x) -> str:
        a, b, c = x
        return f"[[1,{a},{c}],[0,1,{b}],[0,0,1]]"


# unit products i*j = k etc; row/column order 1, i, j, k
_QTAB = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
]
_QNAMES = ("1", "i", "j", "k")


class QuaternionRep:
    """The eight quaternion units, stored as ``(sign, unit)``."""

    kind = "quaternion"

    def identity(self):
        return (1, 0)

    def mul(self, x, y):
        s, u = _QTAB[x[1]][y[1]]
        return (x[0] * y[0] * s, u)

    def inverse(self, x):
        if x[1] == 0:
            return x
        return (-x[0], x[1])

    def name(self, x) -> str:
        return ("" if x[0] > 0 else "-") + _QNAMES[x[1]]
