"""Sparse multivariate polynomials over a finite field, in graded-lex order.

A monomial is a tuple of non-negative exponents.  A polynomial stores
``(monomial, code)`` pairs sorted strictly descending in grlex, so the leading
term is always ``terms[0]``.  Coefficients are field codes (see ``field``).

Conventions:

* grlex compares total degree first and then the exponent tuples
  lexicographically, so ``x1 > x2 > ... > xn``.
* the Borel action is ``(g . f)(x) = f(x g)`` for the row vector ``x``, which
  substitutes ``x_j -> sum_{i <= j} g[i][j] x_i``.  With this convention
  ``(g h) . f == g . (h . f)``.
"""

from __future__ import annotations

import re
from itertools import combinations_with_replacement, product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import FieldMismatchError, UsageError
from .field import FieldElement, FieldSpec

Monomial = Tuple[int, ...]
INFINITE_MULTIPLICITY = float("inf")


def grlex_key(m: Monomial) -> Tuple[int, Monomial]:
    return (sum(m), m)


def grlex_cmp(a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as ``a`` is smaller, equal or greater than ``b`` in grlex."""
    if len(a) != len(b):
        raise UsageError(f"arity mismatch: {a} vs {b}")
    ka, kb = grlex_key(a), grlex_key(b)
    return (ka > kb) - (ka < kb)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def unit_vector(n: int, i: int, power: int = 1) -> Monomial:
    return tuple(power if j == i else 0 for j in range(n))


def monomials_of_degree(n: int, d: int) -> List[Monomial]:
    """All degree-``d`` monomials in ``n`` variables, descending grlex."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomials_up_to(n: int, d: int) -> List[Monomial]:
    """All monomials of degree <= ``d``, ascending grlex."""
    out = []
    for k in range(d + 1):
        out.extend(reversed(monomials_of_degree(n, k)))
    return out


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    res = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        c = 1
        for j in range(ki):
            c = c * (ni - j) // (j + 1)
        res = res * c % p
        n //= p
        k //= p
    return res


def multi_binom_mod_p(lam: Monomial, i: Monomial, p: int) -> int:
    res = 1
    for a, b in zip(lam, i):
        res = res * binom_mod_p(a, b, p) % p
        if not res:
            return 0
    return res


def _coerce_code(field: FieldSpec, c) -> int:
    if isinstance(c, FieldElement):
        if c.field is not field:
            raise FieldMismatchError(f"coefficient from {c.field!r} used in {field!r}")
        return c.code
    if not isinstance(c, int) or not 0 <= c < field.order:
        raise UsageError(f"invalid coefficient code {c!r} for {field!r}")
    return c


class Polynomial:
    """Immutable sparse polynomial; build with the classmethods or arithmetic."""

    __slots__ = ("field", "n", "terms", "_hash")

    def __init__(self, field: FieldSpec, n: int, terms: Union[Mapping[Monomial, int], Iterable[Tuple[Monomial, int]]] = ()):
        self.field = field
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Monomial, int] = {}
        add = field.add
        for m, c in items:
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise UsageError(f"bad exponent vector {m} for arity {n}")
            c = _coerce_code(field, c)
            acc[m] = add(acc[m], c) if m in acc else c
        self.terms: Tuple[Tuple[Monomial, int], ...] = tuple(
            sorted(((m, c) for m, c in acc.items() if c), key=lambda t: grlex_key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldSpec, n: int, acc: Dict[Monomial, int]) -> "Polynomial":
        # trusted constructor: exponent vectors valid, codes reduced
        p = cls.__new__(cls)
        p.field, p.n, p._hash = field, n, None
        p.terms = tuple(sorted(((m, c) for m, c in acc.items() if c),
                               key=lambda t: grlex_key(t[0]), reverse=True))
        return p

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Polynomial":
        return cls._raw(field, n, {})

    @classmethod
    def constant(cls, field: FieldSpec, n: int, c: int) -> "Polynomial":
        return cls._raw(field, n, {(0,) * n: _coerce_code(field, c)})

    @classmethod
    def variable(cls, field: FieldSpec, n: int, i: int) -> "Polynomial":
        """The variable ``x_{i+1}`` (``i`` is 0-based)."""
        if not 0 <= i < n:
            raise UsageError(f"variable index {i} out of range for n={n}")
        return cls._raw(field, n, {unit_vector(n, i): 1})

    @classmethod
    def monomial(cls, field: FieldSpec, m: Sequence[int], c: int = 1) -> "Polynomial":
        return cls(field, len(m), [(tuple(m), c)])

    @classmethod
    def linear_form(cls, field: FieldSpec, coeffs: Sequence[int], const: int = 0) -> "Polynomial":
        n = len(coeffs)
        acc = {unit_vector(n, i): _coerce_code(field, c) for i, c in enumerate(coeffs)}
        acc[(0,) * n] = _coerce_code(field, const)
        return cls._raw(field, n, acc)

    # ------------------------------------------------------------ inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def to_dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def coefficient(self, m: Monomial) -> int:
        for mm, c in self.terms:
            if mm == m:
                return c
        return 0

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms]

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return sum(self.terms[0][0])

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        return self.terms[0][0]

    def leading_coefficient(self) -> int:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        return self.terms[0][1]

    def leading_term(self) -> "Polynomial":
        m, c = self.terms[0]
        return Polynomial._raw(self.field, self.n, {m: c})

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.field, self.n, {m: c for m, c in self.terms if sum(m) == d})

    def hd(self) -> "Polynomial":
        """Top-degree homogeneous part."""
        if not self.terms:
            raise UsageError("hd of the zero polynomial is undefined")
        return self.homogeneous_part(self.degree)

    def monic(self) -> "Polynomial":
        return self.scale(self.field.inv(self.leading_coefficient()))

    # ------------------------------------------------------------ arithmetic
    def _check(self, other: "Polynomial") -> None:
        if other.field is not self.field:
            raise FieldMismatchError(f"field mismatch: {self.field!r} vs {other.field!r}")
        if other.n != self.n:
            raise UsageError(f"arity mismatch: {self.n} vs {other.n}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            return Polynomial.constant(self.field, self.n, _coerce_code(self.field, other))
        if isinstance(other, int):
            return Polynomial.constant(self.field, self.n, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        add = self.field.add
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = add(acc[m], c) if m in acc else c
        return Polynomial._raw(self.field, self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial._raw(self.field, self.n, {m: neg(c) for m, c in self.terms})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        add, mul = F.add, F.mul
        acc: Dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(x + y for x, y in zip(m1, m2))
                c = mul(c1, c2)
                acc[m] = add(acc[m], c) if m in acc else c
        return Polynomial._raw(F, self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise UsageError("negative polynomial power")
        acc = Polynomial.constant(self.field, self.n, 1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def scale(self, c) -> "Polynomial":
        c = _coerce_code(self.field, c)
        mul = self.field.mul
        return Polynomial._raw(self.field, self.n, {m: mul(c, a) for m, a in self.terms})

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "Polynomial":
        mul = self.field.mul
        return Polynomial._raw(self.field, self.n,
                               {tuple(x + y for x, y in zip(m, mono)): mul(a, c) for m, a in self.terms})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field is other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.name, self.n, self.terms))
        return self._hash

    # ------------------------------------------------------------ evaluation
    def evaluate_code(self, point: Sequence[int]) -> int:
        if len(point) != self.n:
            raise UsageError(f"point of length {len(point)} for arity {self.n}")
        F = self.field
        add, mul, pw = F.add, F.mul, F.pow
        cache: Dict[Tuple[int, int], int] = {}
        total = 0
        for m, c in self.terms:
            v = c
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = pw(point[i], e)
                    v = mul(v, cache[key])
                    if not v:
                        break
            total = add(total, v)
        return total

    def evaluate(self, point: Sequence) -> FieldElement:
        codes = [_coerce_code(self.field, a) for a in point]
        return FieldElement(self.field, self.evaluate_code(codes))

    def compose(self, polys: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``x_i -> polys[i]``; the result lives in the arity of ``polys``."""
        if len(polys) != self.n:
            raise UsageError(f"compose needs {self.n} polynomials, got {len(polys)}")
        if not polys:
            return self
        m_arity = polys[0].n
        for p in polys:
            if p.field is not self.field:
                raise FieldMismatchError("compose across fields")
            if p.n != m_arity:
                raise UsageError("compose arguments must share an arity")
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in powers:
                powers[key] = polys[i] if e == 1 else power(i, e - 1) * polys[i]
            return powers[key]

        F = self.field
        acc: Dict[Monomial, int] = {}
        one = {(0,) * m_arity: 1}
        for m, c in self.terms:
            term = Polynomial._raw(F, m_arity, dict(one))
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for mm, cc in term.terms:
                v = F.mul(c, cc)
                acc[mm] = F.add(acc[mm], v) if mm in acc else v
        return Polynomial._raw(F, m_arity, acc)

    def hasse(self, i: Sequence[int]) -> "Polynomial":
        """Hasse derivative: the coefficient of ``z^i`` in ``f(x + z)``."""
        i = tuple(i)
        if len(i) != self.n or any(v < 0 for v in i):
            raise UsageError(f"bad derivative index {i}")
        F = self.field
        p = F.p
        acc: Dict[Monomial, int] = {}
        for m, c in self.terms:
            if all(a >= b for a, b in zip(m, i)):
                b = multi_binom_mod_p(m, i, p)
                if b:
                    acc[mono_div(m, i)] = F.mul(c, b)
        return Polynomial._raw(F, self.n, acc)

    def shift(self, point: Sequence[int]) -> "Polynomial":
        """``f(x + a)``; its coefficient at ``x^i`` is the ``i``-th Hasse derivative at ``a``."""
        F = self.field
        p = F.p
        a = [_coerce_code(F, v) for v in point]
        acc: Dict[Monomial, int] = {}
        pw_cache: Dict[Tuple[int, int], int] = {}

        def apow(j, e):
            key = (j, e)
            if key not in pw_cache:
                pw_cache[key] = F.pow(a[j], e)
            return pw_cache[key]

        for m, c in self.terms:
            factors = []
            for j, e in enumerate(m):
                opts = []
                for k in range(e + 1):
                    b = binom_mod_p(e, k, p)
                    if b:
                        v = F.mul(b, apow(j, e - k))
                        if v:
                            opts.append((k, v))
                factors.append(opts)
            for choice in product(*factors):
                v = c
                for _, w in choice:
                    v = F.mul(v, w)
                mono = tuple(k for k, _ in choice)
                acc[mono] = F.add(acc[mono], v) if mono in acc else v
        return Polynomial._raw(F, self.n, acc)

    def multiplicity(self, point: Sequence[int]):
        """Largest N with all Hasse derivatives of weight < N vanishing at ``point``."""
        if not self.terms:
            return INFINITE_MULTIPLICITY
        shifted = self.shift(point)
        return min(sum(m) for m, _ in shifted.terms)

    def borel_act(self, g: "BorelMatrix") -> "Polynomial":
        if g.field is not self.field or g.n != self.n:
            raise UsageError("Borel matrix does not match the polynomial ring")
        return self.compose(g.images())

    # ------------------------------------------------------------ text
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            factors = [str(c)] + [f"x{i + 1}^{e}" for i, e in enumerate(m) if e]
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial[{self.field.name}, n={self.n}]({self.to_text()})"

    __str__ = to_text


_VAR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, field: FieldSpec, n: int) -> Polynomial:
    """Parse ``"c*x1^a1*...*xn^an + ..."``; ``c`` is an integer field code."""
    text = text.strip()
    acc: Dict[Monomial, int] = {}
    if text in ("", "0"):
        return Polynomial.zero(field, n)
    for raw in text.split("+"):
        raw = raw.replace(" ", "")
        if not raw:
            raise UsageError(f"empty term in {text!r}")
        coeff = 1
        expo = [0] * n
        for factor in raw.split("*"):
            mt = _VAR_RE.match(factor)
            if mt:
                idx = int(mt.group(1)) - 1
                if not 0 <= idx < n:
                    raise UsageError(f"variable x{idx + 1} out of range for n={n}")
                expo[idx] += int(mt.group(2) or 1)
            elif factor.isdigit():
                c = int(factor)
                if c >= field.order:
                    raise UsageError(f"coefficient code {c} out of range for {field!r}")
                coeff = field.mul(coeff, c)
            else:
                raise UsageError(f"cannot parse factor {factor!r}")
        m = tuple(expo)
        acc[m] = field.add(acc.get(m, 0), coeff)
    return Polynomial._raw(field, n, acc)


class BorelMatrix:
    """Invertible upper-triangular n x n matrix of field codes."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: FieldSpec, entries: Sequence[Sequence[int]]):
        n = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise UsageError("Borel matrix must be square")
            row = tuple(_coerce_code(field, c) for c in row)
            if any(row[j] for j in range(i)):
                raise UsageError("Borel matrix must be upper triangular")
            if row[i] == 0:
                raise UsageError("Borel matrix must have a nonzero diagonal")
            rows.append(row)
        self.field = field
        self.n = n
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "BorelMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def elementary(cls, field: FieldSpec, n: int, j: int, i: int, c: int = 1) -> "BorelMatrix":
        """Identity plus ``c`` at (j, i), j < i: sends ``x_i -> x_i + c x_j``."""
        if not j < i:
            raise UsageError("elementary Borel move needs j < i")
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        rows[j][i] = c
        return cls(field, rows)

    def images(self) -> List[Polynomial]:
        """Image of each variable: ``x_j -> sum_i g[i][j] x_i``."""
        return [Polynomial.linear_form(self.field, [self.entries[i][j] for i in range(self.n)])
                for j in range(self.n)]

    def __matmul__(self, other: "BorelMatrix") -> "BorelMatrix":
        F = self.field
        n = self.n
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s = 0
                for k in range(i, j + 1):
                    s = F.add(s, F.mul(self.entries[i][k], other.entries[k][j]))
                out[i][j] = s
        return BorelMatrix(F, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, BorelMatrix) and self.field is other.field and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.field.name, self.entries))

    def __repr__(self) -> str:
        return f"BorelMatrix[{self.field.name}]({[list(r) for r in self.entries]})"


def borel_act(g: BorelMatrix, f: Polynomial) -> Polynomial:
    return f.borel_act(g)


def poly_ops(f: Polynomial, g, op: str):
    """Dispatch ``op`` in {add, mul, scale, eval, compose}."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    if op == "eval":
        return f.evaluate(g)
    if op == "compose":
        return f.compose(g)
    raise UsageError(f"unknown polynomial operation {op!r}")


def hasse_derivative(f: Polynomial, i: Sequence[int]) -> Polynomial:
    return f.hasse(i)


def multiplicity(f: Polynomial, a: Sequence[int]):
    return f.multiplicity(a)


def hd(f: Polynomial) -> Polynomial:
    return f.hd()


def ideal_product(A: Sequence[Polynomial], B: Sequence[Polynomial]) -> List[Polynomial]:
    """Pairwise products with zero and duplicate pruning, in first-seen order."""
    seen = set()
    out = []
    for a in A:
        for b in B:
            if a.field is not b.field or a.n != b.n:
                raise UsageError("ideal_product needs a common ambient ring")
            c = a * b
            if c and c not in seen:
                seen.add(c)
                out.append(c)
    return out
