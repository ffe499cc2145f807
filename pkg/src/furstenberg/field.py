"""Exact arithmetic in prime fields, GF(p^e), and tower extensions GF(q^t).

Every element is encoded as a non-negative integer ``code``.  For a field
built as ``base[y]/(g)`` with ``deg g = t`` the code of
``d_0 + d_1 y + ... + d_{t-1} y^{t-1}`` is ``sum d_i * Q**i`` where ``Q`` is the
order of ``base`` and the ``d_i`` are base codes.  Two consequences are used
throughout the package:

* the prime subfield element ``k`` has code ``k`` in every field, and
* a base element keeps its code in every extension built on top of it, so
  embedding into a tower is the identity on codes.

Field objects are cached, so structurally equal fields are the same object.
"""

from __future__ import annotations

import functools
import math
import random as _random
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import FieldMismatchError, FieldZeroDivisionError, GuardError, UsageError

MAX_BITS = 62
_MUL_TABLE_LIMIT = 1 << 12
_BINARY_TABLE_LIMIT = 1 << 16
_ADD_TABLE_LIMIT = 256
_TRIAL_DIVISION_LIMIT = 4096


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> List[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FieldSpec:
    """A finite field, either Z/p or ``base[y]/(modulus)``.

    Do not instantiate directly; use :func:`field_make`, :func:`extend` or
    :func:`parse_field`.
    """

    def __init__(self, p: int, base: Optional["FieldSpec"], modulus: Tuple[int, ...]):
        self.p = p
        self.base = base
        self.modulus = modulus  # base codes, low -> high, monic
        self.degree = len(modulus) - 1
        self.base_order = p if base is None else base.order
        self.order = self.base_order ** self.degree if base is not None else p
        if base is None:
            self._kind = "prime"
        elif base.base is None and p == 2:
            self._kind = "binary"
            self._mod_bits = sum(c << i for i, c in enumerate(modulus))
        elif base.base is None:
            self._kind = "flat"
        else:
            self._kind = "tower"
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        self._add_table: Optional[List[List[int]]] = None
        if self._kind != "prime":
            limit = _BINARY_TABLE_LIMIT if self._kind == "binary" else _MUL_TABLE_LIMIT
            if self.order <= limit:
                self._build_mul_tables()
            if self._kind in ("flat", "tower") and self.order <= _ADD_TABLE_LIMIT:
                self._add_table = [[self._add_generic(a, b) for b in range(self.order)]
                                   for a in range(self.order)]

    # ------------------------------------------------------------------ naming
    @property
    def name(self) -> str:
        if self.base is None:
            return f"{self.p}^1"
        if self.base.base is None:
            return f"{self.p}^{self.degree}"
        return f"{self.base.name}:{self.degree}"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    def __repr__(self) -> str:
        return f"GF({self.name})"

    def __reduce__(self):
        return (parse_field, (self.name,))

    def tower(self) -> List["FieldSpec"]:
        """This field followed by all of its bases down to Z/p."""
        out, f = [], self
        while f is not None:
            out.append(f)
            f = f.base
        return out

    def embeds_into(self, other: "FieldSpec") -> bool:
        """True when ``other`` is this field or a tower extension over it."""
        return self in other.tower()

    # ------------------------------------------------------------ conversions
    def from_int(self, k: int) -> int:
        return k % self.p

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise UsageError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    def __call__(self, code: int) -> "FieldElement":
        return self.element(code % self.order if code < 0 else code)

    def enumerate_elements(self) -> List["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.order)]

    def digits(self, a: int) -> List[int]:
        out = []
        q = self.base_order
        for _ in range(self.degree):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def undigits(self, ds: Sequence[int]) -> int:
        q = self.base_order
        a = 0
        for d in reversed(ds):
            a = a * q + d
        return a

    def random_code(self, rng: _random.Random) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng: _random.Random) -> int:
        return rng.randrange(1, self.order)

    # ------------------------------------------------------------- arithmetic
    def add(self, a: int, b: int) -> int:
        k = self._kind
        if k == "prime":
            s = a + b
            return s - self.p if s >= self.p else s
        if k == "binary":
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_generic(a, b)

    def _add_generic(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        base = self.base
        return self.undigits([base.add(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        k = self._kind
        if k == "prime":
            return (self.p - a) % self.p
        if self.p == 2:
            return a
        base = self.base
        return self.undigits([base.neg(x) for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._kind == "prime":
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        k = self._kind
        if k == "prime":
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        if k == "binary":
            return self._mul_binary(a, b)
        return self._mul_poly(a, b)

    def _mul_binary(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
        mod, t = self._mod_bits, self.degree
        for i in range(r.bit_length() - 1, t - 1, -1):
            if (r >> i) & 1:
                r ^= mod << (i - t)
        return r

    def _mul_poly(self, a: int, b: int) -> int:
        t = self.degree
        da, db = self.digits(a), self.digits(b)
        g = self.modulus
        if self._kind == "flat":
            p = self.p
            prod = [0] * (2 * t - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            for k in range(2 * t - 2, t - 1, -1):
                c = prod[k] % p
                if c:
                    for j in range(t):
                        prod[k - t + j] -= c * g[j]
            return self.undigits([c % p for c in prod[:t]])
        base = self.base
        prod = [0] * (2 * t - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        for k in range(2 * t - 2, t - 1, -1):
            c = prod[k]
            if c:
                for j in range(t):
                    if g[j]:
                        prod[k - t + j] = base.sub(prod[k - t + j], base.mul(c, g[j]))
        return self.undigits(prod[:t])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self._kind == "prime":
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return acc

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldZeroDivisionError(f"inverse of zero in {self!r}")
        if self._kind == "prime":
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def _build_mul_tables(self) -> None:
        q = self.order
        factors = prime_factors(q - 1)
        mul = self._mul_binary if self._kind == "binary" else self._mul_poly

        def slow_pow(a, e):
            acc = 1
            while e:
                if e & 1:
                    acc = mul(acc, a)
                a = mul(a, a)
                e >>= 1
            return acc

        gen = next(g for g in range(2, q) if all(slow_pow(g, (q - 1) // r) != 1 for r in factors)) \
            if q > 2 else 1
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = mul(x, gen)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log = exp, log


class FieldElement:
    """Value wrapper over a code, for the public arithmetic API."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatchError(f"cannot combine {self.field!r} and {other.field!r}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.name, self.code))

    def __int__(self) -> int:
        return self.code

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"GF({self.field.name})({self.code})"


def arith(a: FieldElement, b: Optional[FieldElement], op: str):
    """Apply ``op`` in {add, sub, mul, div, inv, pow}; for pow ``b`` is an int."""
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** b
    if isinstance(b, FieldElement) and b.field is not a.field:
        raise FieldMismatchError(f"cannot combine {a.field!r} and {b.field!r}")
    try:
        fn = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op]
    except KeyError:
        raise UsageError(f"unknown field operation {op!r}")
    return fn(b)


# ---------------------------------------------------------------------------
# univariate polynomials over a field (codes, low -> high), used for moduli


def _trim(f: List[int]) -> List[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _upoly_mod(F: FieldSpec, f: List[int], g: List[int]) -> List[int]:
    f = list(f)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if c:
            c = F.mul(c, inv_lead)
            for j in range(dg + 1):
                if g[j]:
                    f[k - dg + j] = F.sub(f[k - dg + j], F.mul(c, g[j]))
    return _trim(f[:dg] if dg > 0 else [])


def _upoly_mulmod(F: FieldSpec, a: List[int], b: List[int], g: List[int]) -> List[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    return _upoly_mod(F, prod, g)


def _upoly_powmod(F: FieldSpec, a: List[int], e: int, g: List[int]) -> List[int]:
    acc = [1]
    while e:
        if e & 1:
            acc = _upoly_mulmod(F, acc, a, g)
        e >>= 1
        if e:
            a = _upoly_mulmod(F, a, a, g)
    return acc


def _upoly_gcd(F: FieldSpec, a: List[int], b: List[int]) -> List[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _upoly_mod(F, a, b)
    return a


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def _bmod(a: int, g: int) -> int:
    dg = g.bit_length() - 1
    for i in range(a.bit_length() - 1, dg - 1, -1):
        if (a >> i) & 1:
            a ^= g << (i - dg)
    return a


def _bgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _bmod(a, b)
    return a


def _is_irreducible_binary(g: int) -> bool:
    t = g.bit_length() - 1
    if t == 1:
        return True
    if not g & 1:
        return False

    def frob_iter(k):
        r = 2  # y
        for _ in range(k):
            r = _bmod(_clmul(r, r), g)
        return r

    if frob_iter(t) != 2:
        return False
    for r in prime_factors(t):
        if _bgcd(g, frob_iter(t // r) ^ 2) != 1:
            return False
    return True


def is_irreducible_rabin(F: FieldSpec, g: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial over ``F`` (coefficients low -> high)."""
    g = list(g)
    t = len(g) - 1
    if t == 1:
        return True
    if g[0] == 0:
        return False
    if F.is_prime_field and F.p == 2:
        return _is_irreducible_binary(sum(c << i for i, c in enumerate(g)))
    Q = F.order
    y = [0, 1]

    def frob_iter(k):
        r = y
        for _ in range(k):
            r = _upoly_powmod(F, r, Q, g)
        return r

    yq = frob_iter(t)
    if _trim(list(yq)) != y:
        return False
    for r in prime_factors(t):
        h = list(frob_iter(t // r)) + [0] * 2
        h[1] = F.sub(h[1], 1)
        if len(_upoly_gcd(F, g, _trim(h))) != 1:
            return False
    return True


def _monic_polys(F: FieldSpec, deg: int) -> Iterator[List[int]]:
    Q = F.order
    for idx in range(Q ** deg):
        coeffs = []
        for _ in range(deg):
            idx, r = divmod(idx, Q)
            coeffs.append(r)
        yield coeffs + [1]


def is_irreducible_trial(F: FieldSpec, g: Sequence[int]) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(g)//2."""
    g = list(g)
    t = len(g) - 1
    for d in range(1, t // 2 + 1):
        for h in _monic_polys(F, d):
            if not _upoly_mod(F, g, h):
                return False
    return True


def _least_irreducible(F: FieldSpec, t: int) -> Tuple[int, ...]:
    # ascending index = lexicographic order on (c_{t-1}, ..., c_0)
    cheap = F.order ** (t // 2) <= _TRIAL_DIVISION_LIMIT
    for g in _monic_polys(F, t):
        if t > 1 and g[0] == 0:
            continue
        ok = is_irreducible_trial(F, g) if cheap else is_irreducible_rabin(F, g)
        if ok:
            return tuple(g)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _check_size(order_bits: float) -> None:
    if order_bits > MAX_BITS + 1e-9:
        raise GuardError(f"field of {order_bits:.1f} bits exceeds the {MAX_BITS}-bit guard")


@functools.lru_cache(maxsize=None)
def _prime_field(p: int) -> FieldSpec:
    return FieldSpec(p, None, (0, 1))


@functools.lru_cache(maxsize=None)
def _extension(base: FieldSpec, t: int) -> FieldSpec:
    return FieldSpec(base.p, base, _least_irreducible(base, t))


def field_make(p: int, e: int = 1) -> FieldSpec:
    """GF(p^e) with the least monic irreducible modulus of degree e over Z/p."""
    if not isinstance(p, int) or not is_prime(p):
        raise UsageError(f"characteristic must be prime, got {p!r}")
    if e < 1:
        raise UsageError(f"extension degree must be >= 1, got {e}")
    _check_size(e * math.log2(p))
    F = _prime_field(p)
    return F if e == 1 else _extension(F, e)


def extend(base: FieldSpec, t: int) -> FieldSpec:
    """GF(q^t) as ``base[y]/(g)``; ``extend(F, 1)`` is ``F`` itself."""
    if t < 1:
        raise UsageError(f"extension degree must be >= 1, got {t}")
    if t == 1:
        return base
    _check_size(t * math.log2(base.order))
    return _extension(base, t)


def extension_for(base: FieldSpec, min_order: int) -> FieldSpec:
    """Smallest ``extend(base, t)`` with at least ``min_order`` elements."""
    t = 1
    while base.order ** t < min_order:
        t += 1
    return extend(base, t)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p^e"`` or a tower ``"p^e:t[:t2...]"``; a bare ``"p"`` means ``p^1``."""
    try:
        parts = text.strip().split(":")
        head = parts[0]
        if "^" in head:
            p_s, e_s = head.split("^")
            F = field_make(int(p_s), int(e_s))
        else:
            F = field_make(int(head), 1)
        for t in parts[1:]:
            F = extend(F, int(t))
        return F
    except (ValueError, TypeError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"malformed field spec {text!r}; expected 'p^e' or 'p^e:t'")
