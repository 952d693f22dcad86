"""Named group families and the group-spec grammar.

Accepted descriptors::

    S<n>  A<n>  C<n>  D<2n>  Q8  SL2(<p>)  PSL2(<p>)  ES(<p>)
    perm:<cycles>[,<cycles>...]      e.g. perm:(1 2 3)(4 5),(1 2)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import GroupSpecError
from .elements import HeisenbergRep, PermutationRep, QuaternionRep, SL2Rep, parse_cycles
from .table import DEFAULT_MAX_ORDER, GroupTable, center, quotient

__all__ = ["GroupSpec", "parse_group_spec", "build_named_group", "split_generators"]

MAX_DEGREE = 8
MAX_SL2_PRIME = 13
MAX_ES_PRIME = 7


@dataclass(frozen=True)
class GroupSpec:
    family: str
    param: int | None = None
    generators: tuple[str, ...] = ()

    @property
    def canonical(self) -> str:
        f, p = self.family, self.param
        if f == "symmetric":
            return f"S{p}"
        if f == "alternating":
            return f"A{p}"
        if f == "cyclic":
            return f"C{p}"
        if f == "dihedral":
            return f"D{2 * p}"
        if f == "quaternion8":
            return "Q8"
        if f == "sl2":
            return f"SL2({p})"
        if f == "psl2":
            return f"PSL2({p})"
        if f == "extraspecial_exp_p":
            return f"ES({p})"
        return "perm:" + ",".join(self.generators)

    def __str__(self):
        return self.canonical


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def split_generators(text: str) -> list[str]:
    """Split a comma-separated generator list, ignoring commas inside cycles or matrices."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise GroupSpecError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise GroupSpecError(f"unbalanced parentheses in {text!r}")
    out.append("".join(cur).strip())
    if any(not g for g in out):
        raise GroupSpecError(f"empty generator in {text!r}")
    return out


_SIMPLE = {
    "S": "symmetric",
    "A": "alternating",
    "C": "cyclic",
}


def parse_group_spec(text: str) -> GroupSpec:
    s = text.strip()
    if s.lower().startswith("perm:"):
        gens = tuple(split_generators(s[5:]))
        for g in gens:
            try:
                parse_cycles(g)
            except ValueError as exc:
                raise GroupSpecError(str(exc)) from None
        return GroupSpec("perm", None, gens)
    compact = s.replace(" ", "").upper()
    if compact == "Q8":
        return GroupSpec("quaternion8")
    m = re.fullmatch(r"([SAC])(\d+)", compact)
    if m:
        n = int(m.group(2))
        if not 1 <= n <= MAX_DEGREE and m.group(1) != "C":
            raise GroupSpecError(f"{text!r}: degree must be between 1 and {MAX_DEGREE}")
        if n < 1:
            raise GroupSpecError(f"{text!r}: order must be positive")
        return GroupSpec(_SIMPLE[m.group(1)], n)
    m = re.fullmatch(r"D(\d+)", compact)
    if m:
        order = int(m.group(1))
        if order % 2 or order < 6:
            raise GroupSpecError(f"{text!r}: dihedral order must be even and at least 6")
        return GroupSpec("dihedral", order // 2)
    m = re.fullmatch(r"(P?SL)2\((\d+)\)", compact)
    if m:
        p = int(m.group(2))
        if not _is_prime(p):
            raise GroupSpecError(f"{text!r}: {p} is not prime")
        if p > MAX_SL2_PRIME:
            raise GroupSpecError(f"{text!r}: prime must be at most {MAX_SL2_PRIME}")
        return GroupSpec("psl2" if m.group(1) == "PSL" else "sl2", p)
    m = re.fullmatch(r"ES\((\d+)\)", compact)
    if m:
        p = int(m.group(1))
        if not _is_prime(p) or p == 2:
            raise GroupSpecError(f"{text!r}: {p} is not an odd prime")
        if p > MAX_ES_PRIME:
            raise GroupSpecError(f"{text!r}: prime must be at most {MAX_ES_PRIME}")
        return GroupSpec("extraspecial_exp_p", p)
    raise GroupSpecError(f"unknown group family in {text!r}")


def _cycle(points):
    return "(" + " ".join(str(p) for p in points) + ")"


def _perm_generators(spec: GroupSpec) -> tuple[int, list[str]]:
    f, n = spec.family, spec.param
    if f == "symmetric":
        if n == 1:
            return 1, []
        # adjacent transpositions, so the least triangle of S_n is a pair of transpositions
        return n, [_cycle((i, i + 1)) for i in range(1, n)]
    if f == "alternating":
        if n < 3:
            return n, []
        gens = ["(1 2 3)"]
        if n > 3:
            gens.append(_cycle(range(1, n + 1)) if n % 2 else _cycle(range(2, n + 1)))
        return n, gens
    if f == "cyclic":
        return n, [_cycle(range(1, n + 1))] if n > 1 else []
    if f == "dihedral":
        refl = "".join(_cycle((i, n + 1 - i)) for i in range(1, n // 2 + 1))
        return n, [_cycle(range(1, n + 1)), refl]
    degree = 0
    for g in spec.generators:
        degree = max(degree, len(parse_cycles(g)))
    return max(degree, 1), list(spec.generators)


def build_named_group(spec, cap: int | None = None, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Construct the group named by ``spec`` (a string or :class:`GroupSpec`)."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    label = spec.canonical
    f, p = spec.family, spec.param
    if f == "quaternion8":
        rep = QuaternionRep()
        return GroupTable.from_generators(rep, [(1, 1), (1, 2)], label=label, cap=cap, max_order=max_order)
    if f in ("sl2", "psl2"):
        rep = SL2Rep(p)
        G = GroupTable.from_generators(rep, [(1, 1, 0, 1), (1, 0, 1, 1)], label=f"SL2({p})",
                                       cap=cap, max_order=max_order)
        if f == "sl2":
            return G
        Q, _ = quotient(G, center(G), label=label)
        return Q
    if f == "extraspecial_exp_p":
        rep = HeisenbergRep(p)
        return GroupTable.from_generators(rep, [(1, 0, 0), (0, 1, 0)], label=label, cap=cap,
                                          max_order=max_order)
    degree, gen_text = _perm_generators(spec)
    rep = PermutationRep(degree)
    try:
        gens = [parse_cycles(g, degree) for g in gen_text]
    except ValueError as exc:
        raise GroupSpecError(str(exc)) from None
    return GroupTable.from_generators(rep, gens, label=label, cap=cap, max_order=max_order)
