"""Built-in catalog: every group of order <= 16 up to isomorphism.

Groups are built from small presentations. Metacyclic groups
``<a, b | a^n = 1, b^m = a^s, b a b^-1 = a^r>`` cover the cyclic, dihedral,
quaternion, semidihedral and modular families; the rest come from direct and
semidirect products. Tables are validated by :meth:`FiniteGroup.from_table`.
"""

from __future__ import annotations

import json
import os
from functools import cache
from itertools import product
from pathlib import Path
from typing import Callable, Hashable, Sequence

from .groups import FiniteGroup

CATALOG_ENV = "HALLCRIT_CATALOG_DIR"

# Number of isomorphism types of groups of each order 1..16.
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}


def from_elements(elements: Sequence[Hashable], mul: Callable, name: str, names=None) -> FiniteGroup:
    idx = {x: i for i, x in enumerate(elements)}
    table = [[idx[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup.from_table(table, names=names, name=name)


def _power(a: str, k: int) -> str:
    return "" if k == 0 else a if k == 1 else f"{a}^{k}"


def metacyclic(n: int, m: int, r: int, s: int, name: str) -> FiniteGroup:
    """``<a, b | a^n, b^m = a^s, b a b^-1 = a^r>``; element (i, j) is ``a^i b^j``."""
    if pow(r, m, n) != 1 % n or (r * s - s) % n:
        raise ValueError("inconsistent metacyclic parameters")
    elements = [(i, j) for j in range(m) for i in range(n)]

    def mul(x, y):
        (i1, j1), (i2, j2) = x, y
        i = i1 + pow(r, j1, n) * i2
        j = j1 + j2
        if j >= m:
            i += s
            j -= m
        return (i % n, j)

    names = [(_power("a", i) + ("" if i == 0 or j == 0 else " ") + _power("b", j)) or "e" for i, j in elements]
    return from_elements(elements, mul, name, names)


def cyclic(n: int) -> FiniteGroup:
    return metacyclic(n, 1, 1, 0, f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: a is the rotation r, b the reflection s."""
    return metacyclic(n, 2, n - 1, 0, f"D{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    elements = list(product(G.elements, H.elements))
    names = None
    if G.names is not None and H.names is not None:
        names = [f"({G.names[g]},{H.names[h]})" for g, h in elements]
    return from_elements(
        elements,
        lambda x, y: (G.mul(x[0], y[0]), H.mul(x[1], y[1])),
        name or f"{G.name}x{H.name}",
        names,
    )


def semidirect(N: FiniteGroup, H: FiniteGroup, act: Callable[[int, int], int], name: str) -> FiniteGroup:
    """``N x| H`` with ``(n1, h1)(n2, h2) = (n1 * act(h1, n2), h1 h2)``."""
    elements = list(product(N.elements, H.elements))
    return from_elements(
        elements,
        lambda x, y: (N.mul(x[0], act(x[1], y[0])), H.mul(x[1], y[1])),
        name,
    )


def _abelian(*orders: int) -> FiniteGroup:
    G = cyclic(orders[0])
    for k in orders[1:]:
        G = direct_product(G, cyclic(k))
    return G


def _renamed(G: FiniteGroup, name: str) -> FiniteGroup:
    return FiniteGroup(G.table, G.identity, G.names, name)


def _c4xc2_action(twist: Callable[[int, int], tuple[int, int]], name: str) -> FiniteGroup:
    base = _abelian(4, 2)
    pairs = list(product(range(4), range(2)))
    idx = {p: i for i, p in enumerate(pairs)}

    def act(h, x):
        return x if h == 0 else idx[twist(*pairs[x])]

    return semidirect(base, cyclic(2), act, name)


def _a4() -> FiniteGroup:
    v4 = _abelian(2, 2)
    pairs = list(product(range(2), range(2)))
    idx = {p: i for i, p in enumerate(pairs)}
    # generator of C3 permutes the three involutions (1,0) -> (0,1) -> (1,1)
    def rot(p):
        x, y = p
        return (y, (x + y) % 2)

    def act(h, v):
        p = pairs[v]
        for _ in range(h):
            p = rot(p)
        return idx[p]

    return semidirect(v4, cyclic(3), act, "A4")


def _builders() -> list[tuple[str, Callable[[], FiniteGroup]]]:
    return [
        ("C1", lambda: cyclic(1)),
        ("C2", lambda: cyclic(2)),
        ("C3", lambda: cyclic(3)),
        ("C4", lambda: cyclic(4)),
        ("C2xC2", lambda: _abelian(2, 2)),
        ("C5", lambda: cyclic(5)),
        ("C6", lambda: cyclic(6)),
        ("S3", lambda: _renamed(dihedral(3), "S3")),
        ("C7", lambda: cyclic(7)),
        ("C8", lambda: cyclic(8)),
        ("C4xC2", lambda: _abelian(4, 2)),
        ("C2xC2xC2", lambda: _abelian(2, 2, 2)),
        ("D4", lambda: dihedral(4)),
        ("Q8", lambda: metacyclic(4, 2, 3, 2, "Q8")),
        ("C9", lambda: cyclic(9)),
        ("C3xC3", lambda: _abelian(3, 3)),
        ("C10", lambda: cyclic(10)),
        ("D5", lambda: dihedral(5)),
        ("C11", lambda: cyclic(11)),
        ("C12", lambda: cyclic(12)),
        ("C6xC2", lambda: _abelian(6, 2)),
        ("A4", _a4),
        ("D6", lambda: dihedral(6)),
        ("Dic3", lambda: metacyclic(6, 2, 5, 3, "Dic3")),
        ("C13", lambda: cyclic(13)),
        ("C14", lambda: cyclic(14)),
        ("D7", lambda: dihedral(7)),
        ("C15", lambda: cyclic(15)),
        ("C16", lambda: cyclic(16)),
        ("C4xC4", lambda: metacyclic(4, 4, 1, 0, "C4xC4")),
        ("(C4xC2):C2", lambda: _c4xc2_action(lambda x, y: (x, (y + x) % 2), "(C4xC2):C2")),
        ("C4:C4", lambda: metacyclic(4, 4, 3, 0, "C4:C4")),
        ("C8xC2", lambda: metacyclic(8, 2, 1, 0, "C8xC2")),
        ("M16", lambda: metacyclic(8, 2, 5, 0, "M16")),
        ("D8", lambda: dihedral(8)),
        ("SD16", lambda: metacyclic(8, 2, 3, 0, "SD16")),
        ("Q16", lambda: metacyclic(8, 2, 7, 4, "Q16")),
        ("C4xC2xC2", lambda: _abelian(4, 2, 2)),
        ("D4xC2", lambda: direct_product(dihedral(4), cyclic(2), "D4xC2")),
        ("Q8xC2", lambda: direct_product(metacyclic(4, 2, 3, 2, "Q8"), cyclic(2), "Q8xC2")),
        ("Pauli", lambda: _c4xc2_action(lambda x, y: ((x + 2 * y) % 4, y), "Pauli")),
        ("C2^4", lambda: _renamed(_abelian(2, 2, 2, 2), "C2^4")),
    ]


@cache
def builtin_catalog() -> tuple[tuple[str, FiniteGroup], ...]:
    return tuple((name, _renamed(build(), name)) for name, build in _builders())


def user_catalog(directory: str | os.PathLike | None = None) -> list[tuple[str, FiniteGroup]]:
    """Groups from ``*.json`` group files in ``directory`` (default: $HALLCRIT_CATALOG_DIR)."""
    directory = directory or os.environ.get(CATALOG_ENV)
    if not directory:
        return []
    out = []
    for path in sorted(Path(directory).glob("*.json")):
        doc = json.loads(path.read_text())
        if doc.get("kind", "group") != "group":
            continue
        G = FiniteGroup.from_json(doc)
        out.append((path.stem, _renamed(G, path.stem)))
    return out


def catalog() -> list[tuple[str, FiniteGroup]]:
    return list(builtin_catalog()) + user_catalog()


def get_group(name: str) -> FiniteGroup:
    for n, G in catalog():
        if n == name:
            return G
    raise KeyError(f"no catalog group named {name!r}")
