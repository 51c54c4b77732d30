"""Finite groups given by Cayley tables.

A table is a list of rows over element indices: table[a][b] is the index
of a·b.
"""

from collections.abc import Sequence
from typing import Optional

from sympy import factorint, multiplicity

CayleyTable = Sequence[Sequence[int]]


def element_order(table: CayleyTable, g: int, identity: int = 0) -> int:
    power, order = g, 1
    while power != identity:
        power = table[power][g]
        order += 1
        if order > len(table):
            raise ValueError(f"element {g} has no finite order in table")
    return order


def element_orders(table: CayleyTable, identity: int = 0) -> list[int]:
    return [element_order(table, g, identity) for g in range(len(table))]


def axiom_failure(
    table: CayleyTable, identity: int = 0
) -> Optional[tuple[str, tuple[int, ...]]]:
    """First violated abelian-group axiom as (name, witness), or None."""
    r = len(table)
    for a in range(r):
        if len(table[a]) != r or any(not 0 <= x < r for x in table[a]):
            return "closure", (a,)
    for g in range(r):
        if table[identity][g] != g or table[g][identity] != g:
            return "identity", (g,)
    for g in range(r):
        if identity not in table[g]:
            return "inverse", (g,)
    for a in range(r):
        for b in range(a + 1, r):
            if table[a][b] != table[b][a]:
                return "commutative", (a, b)
    for a in range(r):
        for b in range(r):
            ab = table[a][b]
            for c in range(r):
                if table[ab][c] != table[a][table[b][c]]:
                    return "associative", (a, b, c)
    return None


def invariant_factors_from_orders(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors (each dividing the next) of a finite abelian group.

    For p | r, |{g : g^(p^k) = 1}| = p^(a_k); a_k - a_(k-1) counts the cyclic
    p-primary factors of order >= p^k.
    """
    r = len(orders)
    primary: list[tuple[int, list[int]]] = []
    for p, e in sorted(factorint(r).items()):
        logs = []
        for k in range(e + 1):
            count = sum(1 for o in orders if p**k % o == 0)
            a = multiplicity(p, count)
            if p**a != count:
                raise ValueError(f"{count} elements of order dividing {p}^{k}")
            logs.append(a)
        at_least = [logs[k] - logs[k - 1] for k in range(1, e + 1)] + [0]
        parts: list[int] = []
        for k in range(e, 0, -1):
            parts += [k] * (at_least[k - 1] - at_least[k])
        primary.append((p, parts))

    length = max((len(parts) for _, parts in primary), default=0)
    factors = []
    for index in range(length):
        f = 1
        for p, parts in primary:
            if index < len(parts):
                f *= p ** parts[index]
        factors.append(f)
    return tuple(sorted(factors))
