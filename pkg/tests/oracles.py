"""Independent brute-force oracles used by the tests.

Groups here are sets of permutation tuples; nothing goes through the
multiplication-table code under test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

from hallcrit.catalog import from_elements


def compose(p, q):
    """p after q."""
    return tuple(p[i] for i in q)


def perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def generate(gens):
    e = tuple(range(len(gens[0])))
    found, frontier = {e}, [e]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in found:
                    found.add(y)
                    new.append(y)
        frontier = new
    return sorted(found)


class PermGroup:
    def __init__(self, gens, name="G"):
        self.elements = generate(gens)
        self.e = self.elements[0]
        self.name = name

    def closure(self, S):
        S = set(S) | {self.e}
        while True:
            bigger = S | {compose(a, b) for a in S for b in S}
            if bigger == S:
                return frozenset(S)
            S = bigger

    def normal_closure(self, S):
        return self.closure({compose(compose(g, x), perm_inverse(g)) for g in self.elements for x in S})

    def commutator(self, S, T):
        comms = {compose(compose(compose(a, b), perm_inverse(a)), perm_inverse(b)) for a in S for b in T}
        return self.normal_closure(comms)

    def normal_subgroups(self):
        out = set()
        rest = [x for x in self.elements if x != self.e]
        for k in range(len(rest) + 1):
            for c in combinations(rest, k):
                S = frozenset(c) | {self.e}
                if self.closure(S) == S and self.normal_closure(S) == S:
                    out.add(S)
        return out

    def table_group(self):
        """The same group as a multiplication table, plus the element index."""
        G = from_elements(self.elements, compose, self.name)
        return G, {x: i for i, x in enumerate(self.elements)}


def s3():
    return PermGroup([(1, 0, 2), (1, 2, 0)], "S3")


def d4():
    """Symmetries of a square on vertices 0..3: r rotation, s reflection."""
    return PermGroup([(1, 2, 3, 0), (0, 3, 2, 1)], "D4")


D4_R = (1, 2, 3, 0)
D4_S = (0, 3, 2, 1)


def q8():
    """Q8 in its regular representation on 8 points via i, j."""
    # elements +-1, +-i, +-j, +-k encoded 0..7 as (sign, unit): unit 0=1,1=i,2=j,3=k
    mult = {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
            (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
            (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
            (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0)}

    def mul(a, b):
        (sa, ua), (sb, ub) = divmod(a, 4), divmod(b, 4)
        s, u = mult[(ua, ub)]
        return 4 * ((sa + sb + s) % 2) + u

    return PermGroup([tuple(mul(x, g) for g in range(8)) for x in (1, 2)], "Q8")


def in_span_bruteforce(vectors, target, bound=5):
    """Is target an integer combination of vectors with coefficients in [-bound, bound]?"""
    target = tuple(target)
    n = len(target)
    for coeffs in product(range(-bound, bound + 1), repeat=len(vectors)):
        v = tuple(sum(c * vec[k] for c, vec in zip(coeffs, vectors)) for k in range(n))
        if v == target:
            return True
    return False


def det(m):
    if not m:
        return 1
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def gcd_of_maximal_minors(rows, r):
    """gcd of all r x r minors; equals the product of the Hermite pivots."""
    n = len(rows[0])
    g = 0
    for ri in combinations(range(len(rows)), r):
        for ci in combinations(range(n), r):
            g = gcd(g, det([[rows[i][j] for j in ci] for i in ri]))
    return g


def rational_coordinates(vectors, target):
    """Unique rational c with sum c_i v_i = target, for linearly independent
    ``vectors``; None if target is outside their rational span.

    Raises ValueError if the vectors are dependent."""
    k, n = len(vectors), len(target)
    # augmented system: columns are the vectors, last column the target
    rows = [[Fraction(vectors[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            raise ValueError("vectors are linearly dependent")
        rows[r], rows[p] = rows[p], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [a - rows[i][c] * b for a, b in zip(rows[i], rows[r])]
        r += 1
    if any(rows[i][k] for i in range(r, n)):
        return None
    return tuple(rows[i][k] for i in range(k))
