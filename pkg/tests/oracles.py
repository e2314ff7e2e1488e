"""Independent reference computations used to freeze expected values.

Everything here is written from scratch over plain Python integers: no
numpy, no imports from the package under test.  Slow is fine, the inputs
are tiny.  Polynomials are dicts mapping exponent tuples to coefficients,
matrices are lists of rows.
"""

from __future__ import annotations

import itertools


# ---------------------------------------------------------------------------
# Z/m side

def span_closure(columns, modulus: int) -> set:
    """All Z-linear combinations of the given integer vectors mod m."""
    height = len(columns[0]) if columns else 0
    zero = (0,) * height
    seen = {zero}
    frontier = [zero]
    gens = [tuple(int(c) % modulus for c in col) for col in columns]
    while frontier:
        base = frontier.pop()
        for gen in gens:
            nxt = tuple((b + c) % modulus for b, c in zip(base, gen))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def matrix_columns(rows) -> list:
    return [tuple(row[j] for row in rows) for j in range(len(rows[0]))]


def coker_size(modulus: int, rows) -> int:
    """|Z/m^g / colspan(rho)| for rho given as a list of g rows."""
    ngens = len(rows)
    return modulus ** ngens // len(span_closure(matrix_columns(rows),
                                                modulus))


def annihilator(modulus: int, x: int) -> list:
    return [a for a in range(modulus) if (a * x) % modulus == 0]


def hom_count(modulus: int, rho1, rho2) -> int:
    """|Hom(Coker rho1, Coker rho2)| by direct enumeration.

    A homomorphism is a class of q2 x q1 matrices psi with every column
    of psi rho1 landing in colspan(rho2); two classes agree when they
    differ by a matrix with all columns in colspan(rho2).
    """
    q1, c1 = len(rho1), len(rho1[0])
    q2 = len(rho2)
    span2 = span_closure(matrix_columns(rho2), modulus)
    lifting = 0
    for flat in itertools.product(range(modulus), repeat=q2 * q1):
        psi = [flat[i * q1:(i + 1) * q1] for i in range(q2)]
        ok = True
        for j in range(c1):
            col = tuple(sum(psi[i][k] * rho1[k][j] for k in range(q1))
                        % modulus for i in range(q2))
            if col not in span2:
                ok = False
                break
        if ok:
            lifting += 1
    return lifting // (len(span2) ** q1)


# ---------------------------------------------------------------------------
# graded side: F_p[vars] modulo a monomial ideal

def exponents(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in exponents(total - head, parts - 1):
            yield (head,) + tail


class MonomialQuotientOracle:
    """F_p[x_1..x_n]/(monomials), dense by degree."""

    def __init__(self, p: int, nvars: int, forbidden):
        self.p = p
        self.nvars = nvars
        self.forbidden = [tuple(f) for f in forbidden]

    def allowed(self, exp) -> bool:
        return not any(all(e >= f for e, f in zip(exp, mono))
                       for mono in self.forbidden)

    def basis(self, degree: int) -> list:
        if degree < 0:
            return []
        return sorted(exp for exp in exponents(degree, self.nvars)
                      if self.allowed(exp))

    def mul(self, poly1: dict, poly2: dict) -> dict:
        out: dict = {}
        for e1, c1 in poly1.items():
            for e2, c2 in poly2.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                if self.allowed(exp):
                    out[exp] = (out.get(exp, 0) + c1 * c2) % self.p
        return {e: c for e, c in out.items() if c}

    def add(self, poly1: dict, poly2: dict) -> dict:
        out = dict(poly1)
        for exp, c in poly2.items():
            out[exp] = (out.get(exp, 0) + c) % self.p
        return {e: c for e, c in out.items() if c}

    def ring_dimension(self, degree: int) -> int:
        return len(self.basis(degree))


def rank_mod_p(rows, p: int) -> int:
    """Gaussian elimination over F_p on a list-of-rows integer matrix."""
    mat = [[val % p for val in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [(v - factor * w) % p
                          for v, w in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def coker_dimension(oracle: MonomialQuotientOracle, rho, row_degs,
                    col_degs, degree: int) -> int:
    """dim_Fp of (coker rho)_degree for a matrix of dict-polynomials.

    Row i of the free target sits in degree row_degs[i], column j of the
    free source in degree col_degs[j].
    """
    target = [(i, mono) for i, rdeg in enumerate(row_degs)
              for mono in oracle.basis(degree - rdeg)]
    source = [(j, mono) for j, cdeg in enumerate(col_degs)
              for mono in oracle.basis(degree - cdeg)]
    index = {key: pos for pos, key in enumerate(target)}
    rows = [[0] * len(source) for _ in target]
    for pos, (j, mono) in enumerate(source):
        shift = {mono: 1}
        for i in range(len(row_degs)):
            image = oracle.mul(rho[i][j], shift)
            for exp, coeff in image.items():
                rows[index[(i, exp)]][pos] = coeff
    return len(target) - rank_mod_p(rows, oracle.p)


def coker_hilbert(oracle: MonomialQuotientOracle, rho, row_degs, col_degs,
                  top: int) -> list:
    return [coker_dimension(oracle, rho, row_degs, col_degs, d)
            for d in range(top + 1)]
