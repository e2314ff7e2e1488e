"""Two exact ring backends and element-level operations.

FiniteLocalRing models Z/p^k, optionally extended by one nilpotent-style
generator with a monic rewrite whose lower coefficients lie in (p).  Every
element is a coordinate vector over Z/p^k, the carrier is finite, and all
linear questions are decided exactly by Howell normal forms.

GradedMonomialRing models F_p[x_1..x_v]/(pure monomial ideal).  Elements are
sparse maps from exponent vectors to coefficients, kept in normal form by
discarding monomials divisible by an ideal generator.  Homogeneous slices
are finite dimensional F_p spaces, so degree-bounded questions are decided
exactly degree by degree.

Both backends share an expression parser, canonical printing (degree first,
then lexicographic by the declared variable order), and the ideal-level
operations used by the verification layers: unit tests, annihilators with
scope, and ideal membership with witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _fp, _zn
from .errors import (NotAUnit, ParseError, TotrefError, UnknownVariable,
                     WrongBackend)

DEFAULT_DEGREE_BOUND = 8


def scope_exhaustive() -> dict:
    return {"mode": "exhaustive"}


def scope_degree(bound: int) -> dict:
    return {"mode": "degree", "bound": bound}


# ---------------------------------------------------------------------------
# expression parsing (shared by both backends)

_OPS = set("+-*^()")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch))
            i += 1
            continue
        if ch == "*" or ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i:
                raise ParseError(f"unexpected character {ch!r} at position {i}")
            tokens.append(("int", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    return tokens


class _Parser:
    """Recursive descent for +, -, *, ^ and parentheses."""

    def __init__(self, ring, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        value = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, text = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer")
            value = value ** int(text)
        return -value if sign < 0 else value

    def atom(self):
        kind, text = self.take()
        if kind == "int":
            return self.ring.from_int(int(text))
        if kind == "name":
            return self.ring.variable(text)
        if kind == "(":
            value = self.expr()
            if self.take()[0] != ")":
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return value
        raise ParseError(f"unexpected token in {self.text!r}")


# ---------------------------------------------------------------------------
# finite backend

class FiniteElement:
    __slots__ = ("ring", "coords")

    def __init__(self, ring: "FiniteLocalRing", coords: tuple[int, ...]):
        self.ring = ring
        self.coords = coords

    def _check(self, other) -> "FiniteElement":
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, FiniteElement) and other.ring.key == self.ring.key:
            return other
        raise TotrefError("cannot mix elements of different rings")

    def __add__(self, other):
        other = self._check(other)
        n = self.ring.n
        return FiniteElement(self.ring, tuple((a + b) % n for a, b in
                                              zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        n = self.ring.n
        return FiniteElement(self.ring, tuple((-a) % n for a in self.coords))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + self._check(other)

    def __mul__(self, other):
        other = self._check(other)
        return FiniteElement(self.ring, self.ring._mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise TotrefError("negative exponents are not supported")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, FiniteElement)
                and other.ring.key == self.ring.key
                and other.coords == self.coords)

    def __hash__(self):
        return hash((self.ring.key, self.coords))

    def __bool__(self):
        return any(self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return self.ring.format(self)


class FiniteLocalRing:
    """Z/p^k, optionally extended by a single monic nilpotent generator.

    The optional extension adjoins a variable t with a rewrite
    t^d = r_0 + r_1 t + ... + r_{d-1} t^{d-1} where every r_i is divisible
    by p.  That constraint keeps the ring local with residue field F_p and
    makes t land in the maximal ideal, which the minimal-generator count
    relies on.
    """

    kind = "finite"

    def __init__(self, p: int, k: int, ext_var: str | None = None,
                 ext_reduction: tuple[int, ...] | None = None):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise TotrefError(f"{p} is not prime")
        if k < 1:
            raise TotrefError("k must be positive")
        self.p = p
        self.k = k
        self.n = p ** k
        if ext_var is None:
            self.ext_var = None
            self.ext_reduction: tuple[int, ...] = ()
            self.ext_degree = 1
        else:
            if not ext_reduction:
                raise TotrefError("extension requires a rewrite vector")
            red = tuple(c % self.n for c in ext_reduction)
            if any(c % p for c in red):
                raise TotrefError("extension rewrite must lie in (p) to keep "
                                  "the ring local")
            self.ext_var = ext_var
            self.ext_reduction = red
            self.ext_degree = len(red)
        d = self.ext_degree
        # powers of t up to t^(2d-2), as coordinate vectors
        self._powers: list[tuple[int, ...]] = []
        for j in range(2 * d - 1):
            if j < d:
                vec = [0] * d
                vec[j] = 1
                self._powers.append(tuple(vec))
            else:
                prev = self._powers[j - 1]
                shifted = [0] + list(prev[:d - 1])
                carry = prev[d - 1]
                vec = [(shifted[i] + carry * self.ext_reduction[i]) % self.n
                       for i in range(d)]
                self._powers.append(tuple(vec))
        self.key = ("finite", p, k, self.ext_var, self.ext_reduction)

    # -- construction -----------------------------------------------------

    def element(self, coords) -> FiniteElement:
        coords = tuple(int(c) % self.n for c in coords)
        if len(coords) != self.ext_degree:
            raise TotrefError("wrong coordinate length")
        return FiniteElement(self, coords)

    def zero(self) -> FiniteElement:
        return self.element([0] * self.ext_degree)

    def one(self) -> FiniteElement:
        return self.from_int(1)

    def from_int(self, c: int) -> FiniteElement:
        coords = [0] * self.ext_degree
        coords[0] = c % self.n
        return FiniteElement(self, tuple(coords))

    def variable(self, name: str) -> FiniteElement:
        if self.ext_var is not None and name == self.ext_var:
            coords = [0] * self.ext_degree
            if self.ext_degree == 1:
                # t itself rewrites immediately
                return self.element(self.ext_reduction)
            coords[1] = 1
            return self.element(coords)
        raise UnknownVariable(f"ring has no variable {name!r}")

    def parse(self, text: str) -> FiniteElement:
        return _Parser(self, text).parse()

    # -- arithmetic core ---------------------------------------------------

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        d = self.ext_degree
        n = self.n
        if d == 1:
            return ((a[0] * b[0]) % n,)
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = [0] * d
        for j, cj in enumerate(conv):
            if cj:
                power = self._powers[j]
                for i in range(d):
                    out[i] += cj * power[i]
        return tuple(c % n for c in out)

    # -- queries -----------------------------------------------------------

    def is_unit(self, e: FiniteElement) -> bool:
        # valid because the extension generator lies in the maximal ideal
        return e.coords[0] % self.p != 0

    def inverse(self, e: FiniteElement) -> FiniteElement:
        solver = _zn.SpanSolver(self.mult_columns(e), self.n, self.ext_degree)
        x = solver.solve(list(self.one().coords))
        if x is None:
            raise NotAUnit(f"{e!r} is not invertible")
        return self.element(x)

    def residue(self, e: FiniteElement) -> int:
        return e.coords[0] % self.p

    def mult_columns(self, e: FiniteElement) -> list[list[int]]:
        """Columns of the multiplication-by-e map on coordinates."""
        d = self.ext_degree
        cols = []
        for j in range(d):
            tj = FiniteElement(self, self._powers[j])
            cols.append(list((e * tj).coords))
        return cols

    def carrier_size(self) -> int:
        return self.n ** self.ext_degree

    def enumerate_carrier(self):
        for coords in itertools.product(range(self.n), repeat=self.ext_degree):
            yield FiniteElement(self, coords)

    # -- formatting ---------------------------------------------------------

    def format(self, e: FiniteElement) -> str:
        if self.ext_degree == 1:
            return str(e.coords[0])
        parts = []
        for j in range(self.ext_degree - 1, -1, -1):
            c = e.coords[j]
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                power = self.ext_var if j == 1 else f"{self.ext_var}^{j}"
                parts.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(parts) if parts else "0"

    def descriptor(self) -> dict:
        desc = {"kind": "finite", "p": self.p, "k": self.k}
        if self.ext_var is None:
            desc["vars"] = []
            desc["relations"] = []
            return desc
        # the file format only covers pure nilpotent rewrites t^d = 0
        if any(self.ext_reduction):
            raise TotrefError("only pure nilpotent extensions have a file "
                              "descriptor")
        desc["vars"] = [self.ext_var]
        desc["relations"] = [f"{self.ext_var}^{self.ext_degree}"]
        return desc


# ---------------------------------------------------------------------------
# graded backend

class GradedElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: "GradedMonomialRing", terms: tuple):
        self.ring = ring
        self.terms = terms  # tuple of (exponent tuple, coeff), canonical order

    def _check(self, other) -> "GradedElement":
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, GradedElement) and other.ring.key == self.ring.key:
            return other
        raise TotrefError("cannot mix elements of different rings")

    def __add__(self, other):
        other = self._check(other)
        data = dict(self.terms)
        p = self.ring.p
        for exp, c in other.terms:
            new = (data.get(exp, 0) + c) % p
            if new:
                data[exp] = new
            else:
                data.pop(exp, None)
        return self.ring._from_dict(data)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return GradedElement(self.ring,
                             tuple((exp, (-c) % p) for exp, c in self.terms))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + self._check(other)

    def __mul__(self, other):
        other = self._check(other)
        ring = self.ring
        p = ring.p
        data: dict[tuple, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exp = tuple(a + b for a, b in zip(e1, e2))
                if not ring.is_normal(exp):
                    continue
                new = (data.get(exp, 0) + c1 * c2) % p
                if new:
                    data[exp] = new
                else:
                    data.pop(exp, None)
        return ring._from_dict(data)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise TotrefError("negative exponents are not supported")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, GradedElement)
                and other.ring.key == self.ring.key
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.ring.key, self.terms))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Total degree, or None for the zero element."""
        if not self.terms:
            return None
        return max(sum(exp) for exp, _ in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(exp) for exp, _ in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[int, "GradedElement"]:
        buckets: dict[int, dict] = {}
        for exp, c in self.terms:
            buckets.setdefault(sum(exp), {})[exp] = c
        return {d: self.ring._from_dict(data)
                for d, data in sorted(buckets.items())}

    def __repr__(self):
        return self.ring.format(self)


def _monomial_sort_key(exp: tuple[int, ...]):
    # degree first, then lexicographic by the declared variable order,
    # largest first; gives the usual x^2, x*y, x*z, y^2, ... display
    return (-sum(exp), tuple(-e for e in exp))


class GradedMonomialRing:
    """F_p[vars] modulo an ideal generated by pure monomials."""

    kind = "graded"

    def __init__(self, p: int, variables: tuple[str, ...],
                 relations: tuple[tuple[int, ...], ...]):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise TotrefError(f"{p} is not prime")
        self.p = p
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise TotrefError("duplicate variable names")
        rels = []
        for exp in relations:
            if len(exp) != len(self.variables) or sum(exp) == 0:
                raise TotrefError("relations must be nonconstant monomials in "
                                  "the declared variables")
            rels.append(tuple(int(e) for e in exp))
        # drop generators divisible by another generator, keep canonical order
        rels.sort(key=_monomial_sort_key)
        kept: list[tuple[int, ...]] = []
        for exp in rels:
            if not any(all(a >= b for a, b in zip(exp, other)) and exp != other
                       for other in rels):
                if exp not in kept:
                    kept.append(exp)
        self.relations = tuple(kept)
        self.key = ("graded", p, self.variables, self.relations)
        self._basis_cache: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._index_cache: dict[int, dict[tuple[int, ...], int]] = {}
        self._mult_cache: dict = {}

    # -- construction -----------------------------------------------------

    def _from_dict(self, data: dict[tuple, int]) -> GradedElement:
        terms = tuple(sorted(((exp, c % self.p) for exp, c in data.items()
                              if c % self.p),
                             key=lambda item: _monomial_sort_key(item[0])))
        return GradedElement(self, terms)

    def zero(self) -> GradedElement:
        return GradedElement(self, ())

    def one(self) -> GradedElement:
        return self.from_int(1)

    def from_int(self, c: int) -> GradedElement:
        c %= self.p
        if c == 0:
            return self.zero()
        return GradedElement(self, (((0,) * len(self.variables), c),))

    def variable(self, name: str) -> GradedElement:
        if name not in self.variables:
            raise UnknownVariable(f"ring has no variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in self.variables)
        if not self.is_normal(exp):
            return self.zero()
        return GradedElement(self, ((exp, 1),))

    def monomial_element(self, exp: tuple[int, ...], coeff: int = 1) -> GradedElement:
        return self._from_dict({tuple(exp): coeff})

    def parse(self, text: str) -> GradedElement:
        return _Parser(self, text).parse()

    # -- normal form -------------------------------------------------------

    def is_normal(self, exp: tuple[int, ...]) -> bool:
        for rel in self.relations:
            if all(a >= b for a, b in zip(exp, rel)):
                return False
        return True

    def basis(self, d: int) -> tuple[tuple[int, ...], ...]:
        """Exponent vectors of the monomial basis of the degree-d slice."""
        if d < 0:
            return ()
        cached = self._basis_cache.get(d)
        if cached is None:
            monos = [exp for exp in _compositions(d, len(self.variables))
                     if self.is_normal(exp)]
            cached = tuple(monos)
            self._basis_cache[d] = cached
            self._index_cache[d] = {exp: i for i, exp in enumerate(cached)}
        return cached

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def index_of(self, exp: tuple[int, ...]) -> int:
        d = sum(exp)
        self.basis(d)
        return self._index_cache[d][exp]

    # -- slice linear algebra ----------------------------------------------

    def mult_matrix(self, e: GradedElement, src_deg: int) -> np.ndarray:
        """Matrix of multiplication by homogeneous e from degree src_deg."""
        t = e.degree()
        if t is None:
            raise TotrefError("mult_matrix needs a nonzero element")
        cache_key = (e.terms, src_deg)
        hit = self._mult_cache.get(cache_key)
        if hit is not None:
            return hit
        src = self.basis(src_deg)
        dst = self.basis(src_deg + t)
        dst_index = self._index_cache[src_deg + t]
        mat = _fp.zeros(len(dst), len(src))
        for j, mono in enumerate(src):
            for exp, c in e.terms:
                product = tuple(a + b for a, b in zip(mono, exp))
                if self.is_normal(product):
                    mat[dst_index[product], j] = (mat[dst_index[product], j] + c) % self.p
        self._mult_cache[cache_key] = mat
        return mat

    def vector_of(self, e: GradedElement, d: int) -> np.ndarray:
        """Coordinates of the degree-d component in the slice basis."""
        self.basis(d)
        vec = _fp.zeros(self.dim(d), 1)
        index = self._index_cache[d]
        for exp, c in e.terms:
            if sum(exp) == d:
                vec[index[exp], 0] = c
        return vec

    def element_of_vector(self, vec, d: int) -> GradedElement:
        data = {}
        for i, exp in enumerate(self.basis(d)):
            c = int(vec[i]) % self.p
            if c:
                data[exp] = c
        return self._from_dict(data)

    # -- queries -----------------------------------------------------------

    def is_unit(self, e: GradedElement) -> bool:
        # unit in the local (graded-local) sense: nonzero constant term
        for exp, c in e.terms:
            if sum(exp) == 0:
                return c % self.p != 0
        return False

    def inverse(self, e: GradedElement) -> GradedElement:
        if len(e.terms) == 1 and sum(e.terms[0][0]) == 0:
            return self.from_int(pow(e.terms[0][1], self.p - 2, self.p))
        raise NotAUnit("only constant units have a representable inverse")

    def residue(self, e: GradedElement) -> int:
        for exp, c in e.terms:
            if sum(exp) == 0:
                return c % self.p
        return 0

    # -- formatting ---------------------------------------------------------

    def format(self, e: GradedElement) -> str:
        if not e.terms:
            return "0"
        parts = []
        for exp, c in e.terms:
            factors = []
            for name, power in zip(self.variables, exp):
                if power == 1:
                    factors.append(name)
                elif power > 1:
                    factors.append(f"{name}^{power}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def descriptor(self) -> dict:
        return {
            "kind": "graded",
            "p": self.p,
            "vars": list(self.variables),
            "relations": [self.format(self.monomial_element(exp))
                          for exp in self.relations],
        }


def _compositions(total: int, parts: int):
    """Exponent vectors of degree ``total``, largest-first lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


# ---------------------------------------------------------------------------
# descriptors and files

def ring_from_descriptor(desc: dict):
    kind = desc.get("kind")
    if kind == "finite":
        p, k = int(desc["p"]), int(desc["k"])
        variables = desc.get("vars") or []
        relations = desc.get("relations") or []
        if not variables:
            return FiniteLocalRing(p, k)
        if len(variables) != 1 or len(relations) != 1:
            raise TotrefError("finite descriptors support one nilpotent "
                              "extension variable")
        name = variables[0]
        exp = _parse_pure_power(relations[0], name)
        return FiniteLocalRing(p, k, ext_var=name, ext_reduction=(0,) * exp)
    if kind == "graded":
        p = int(desc["p"])
        variables = tuple(desc.get("vars") or ())
        if not variables:
            raise TotrefError("graded descriptor needs variables")
        rels = []
        for text in desc.get("relations") or []:
            rels.append(_parse_monomial(variables, text))
        return GradedMonomialRing(p, variables, tuple(rels))
    raise TotrefError(f"unknown ring kind {kind!r}")


def _parse_pure_power(text: str, name: str) -> int:
    probe = GradedMonomialRing(2, (name,), ())
    e = probe.parse(text)
    if len(e.terms) != 1 or e.terms[0][1] != 1:
        raise ParseError(f"{text!r} is not a pure power of {name}")
    return e.terms[0][0][0]


def _parse_monomial(variables: tuple[str, ...], text: str) -> tuple[int, ...]:
    probe = GradedMonomialRing(2, variables, ())
    e = probe.parse(text)
    if len(e.terms) != 1 or e.terms[0][1] != 1:
        raise ParseError(f"{text!r} is not a monomial")
    return e.terms[0][0]


def parse_element(ring, text: str):
    """Parse ``text`` into a normal-form element of ``ring``."""
    return ring.parse(text)


def is_unit(ring, e) -> bool:
    return ring.is_unit(e)


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True)
class IdealGenerators:
    """A finite generator list together with the scope it was computed at."""

    generators: tuple
    scope: dict

    def __iter__(self):
        return iter(self.generators)


def annihilator(ring, e, bound: int | None = None) -> IdealGenerators:
    """Generators of Ann(e), exhaustive (finite) or in degrees <= bound."""
    if isinstance(ring, FiniteLocalRing):
        solver = _zn.SpanSolver(ring.mult_columns(e), ring.n, ring.ext_degree)
        gens = tuple(ring.element(v) for v in solver.kernel_generators())
        return IdealGenerators(gens, scope_exhaustive())
    if bound is None:
        bound = DEFAULT_DEGREE_BOUND
    components = ([] if e.is_zero else
                  sorted(e.homogeneous_components().items()))
    gens: list[GradedElement] = []
    for d in range(bound + 1):
        dim_d = ring.dim(d)
        if dim_d == 0:
            continue
        if e.is_zero:
            blocks = [_fp.zeros(0, dim_d)]
        else:
            blocks = [ring.mult_matrix(comp, d) for _, comp in components]
        stacked = (np.concatenate(blocks, axis=0) if blocks
                   else _fp.zeros(0, dim_d))
        kern = _fp.kernel(stacked, ring.p) if stacked.shape[0] else \
            np.eye(dim_d, dtype=np.int64)
        if kern.shape[1] == 0:
            continue
        span_blocks = []
        for g in gens:
            dg = g.degree()
            if dg is not None and dg <= d:
                span_blocks.append(ring.mult_matrix(g, d - dg))
        span = np.concatenate(span_blocks, axis=1) if span_blocks else None
        for j in _fp.extend_independent(span, kern, ring.p):
            gens.append(ring.element_of_vector(kern[:, j], d))
    return IdealGenerators(tuple(gens), scope_degree(bound))


def ideal_membership(ring, e, generators, bound: int | None = None):
    """Decide e in (generators); on success also return witness coefficients.

    Finite backend answers are exhaustive.  On the graded backend the answer
    is exact whenever all generators are homogeneous; otherwise the witness
    search is truncated at ``bound`` and a miss only means "not found within
    the bound".
    """
    gens = list(generators)
    if isinstance(ring, FiniteLocalRing):
        d = ring.ext_degree
        cols = []
        for g in gens:
            cols.extend(ring.mult_columns(g))
        solver = _zn.SpanSolver(cols, ring.n, d)
        x = solver.solve(list(e.coords))
        if x is None:
            return False, None
        witnesses = [ring.element(x[i * d:(i + 1) * d]) for i in range(len(gens))]
        total = ring.zero()
        for w, g in zip(witnesses, gens):
            total = total + w * g
        assert total == e
        return True, witnesses
    if bound is None:
        bound = DEFAULT_DEGREE_BOUND
    if e.is_zero:
        return True, [ring.zero() for _ in gens]
    if all(g.is_homogeneous() and not g.is_zero for g in gens):
        witnesses = [ring.zero() for _ in gens]
        for d, comp in sorted(e.homogeneous_components().items()):
            blocks = []
            meta = []
            for i, g in enumerate(gens):
                dg = g.degree()
                src = d - dg
                if src < 0 or ring.dim(src) == 0:
                    continue
                blocks.append(ring.mult_matrix(g, src))
                meta.append((i, src))
            if not blocks:
                return False, None
            system = np.concatenate(blocks, axis=1)
            sol = _fp.solve(system, ring.vector_of(comp, d), ring.p)
            if sol is None:
                return False, None
            offset = 0
            for (i, src), block in zip(meta, blocks):
                width = block.shape[1]
                piece = ring.element_of_vector(sol[offset:offset + width, 0], src)
                witnesses[i] = witnesses[i] + piece
                offset += width
        total = ring.zero()
        for w, g in zip(witnesses, gens):
            total = total + w * g
        assert total == e
        return True, witnesses
    # mixed-degree generators: truncated search, sound positives only
    max_gen_deg = max((g.degree() or 0) for g in gens) if gens else 0
    top = max(bound + max_gen_deg, e.degree() or 0)
    rows = sum(ring.dim(d) for d in range(top + 1))

    def big_vector(elt):
        vec = _fp.zeros(rows, 1)
        offset = 0
        for d in range(top + 1):
            block = ring.vector_of(elt, d)
            vec[offset:offset + block.shape[0]] = block
            offset += block.shape[0]
        return vec

    cols = []
    meta2 = []
    for i, g in enumerate(gens):
        for d in range(bound + 1):
            for exp in ring.basis(d):
                mono = ring.monomial_element(exp)
                product = mono * g
                if (product.degree() or 0) > top and not product.is_zero:
                    continue
                cols.append(big_vector(product))
                meta2.append((i, mono))
    if not cols:
        return False, None
    system = np.concatenate(cols, axis=1)
    sol = _fp.solve(system, big_vector(e), ring.p)
    if sol is None:
        return False, None
    witnesses = [ring.zero() for _ in gens]
    for idx, (i, mono) in enumerate(meta2):
        c = int(sol[idx, 0]) % ring.p
        if c:
            witnesses[i] = witnesses[i] + ring.from_int(c) * mono
    total = ring.zero()
    for w, g in zip(witnesses, gens):
        total = total + w * g
    if total != e:
        return False, None
    return True, witnesses


def graded_basis(ring, d: int):
    """Monomial basis of the degree-d slice, as elements."""
    if not isinstance(ring, GradedMonomialRing):
        raise WrongBackend("graded_basis needs the graded backend")
    return [ring.monomial_element(exp) for exp in ring.basis(d)]


def enumerate_carrier(ring):
    if not isinstance(ring, FiniteLocalRing):
        raise WrongBackend("enumerate_carrier needs the finite backend")
    return list(ring.enumerate_carrier())
