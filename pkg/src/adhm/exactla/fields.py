"""Exact fields: the rationals and finite fields GF(p^k).

Field elements are stored as plain Python values so matrices stay cheap:
``Fraction`` for the rationals and ``int`` in ``range(q)`` for GF(p^k), where
the integer's base-p digits are the polynomial coefficients c0, c1, ...
of the residue class modulo the defining polynomial.  ``Scalar`` wraps a raw
value together with its field for user-facing arithmetic.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator, Sequence

from ..errors import DivisionByZero, FieldMismatch, MalformedInput, UnsupportedField

# Largest q for which multiplication goes through log/exp tables.
_LOG_TABLE_LIMIT = 1 << 16
# Largest q for which addition in GF(p^k), p odd, goes through a full table.
_ADD_TABLE_LIMIT = 256
# Irreducibility is certified by trial factorization only up to this size.
_MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            return (p, k) if rest == 1 else None
    return None


# --- polynomials over F_p, coefficient lists low degree first --------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        f = (a[-1] * inv_lead) % p
        for t, c in enumerate(m):
            a[shift + t] = (a[shift + t] - f * c) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for s, x in enumerate(a):
        if x:
            for t, y in enumerate(b):
                out[s + t] = (out[s + t] + x * y) % p
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial factorization: no monic factor of degree 1..deg/2."""
    deg = len(modulus) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for e in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k with the smallest integer code.

    The code of x^k + c_{k-1}x^{k-1} + ... + c_0 is sum c_i p^i, so the
    comparison runs from the highest lower coefficient down.
    """
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        low = [(code // p ** t) % p for t in range(k)]
        cand = tuple(low + [1])
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- field classes ----------------------------------------------------------

class Field:
    """Common interface; values are raw (Fraction or int)."""

    is_finite: bool = False
    char: int = 0
    order: int | None = None

    zero: Any
    one: Any

    # arithmetic on raw values
    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def inv(self, a): raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def coerce(self, x): raise NotImplementedError
    def parse(self, s) -> Any: raise NotImplementedError
    def format(self, a) -> str: raise NotImplementedError

    def from_int(self, n: int):
        """The image of the integer n, i.e. n * 1."""
        return self.coerce(n)

    def elements(self) -> Iterator:
        raise UnsupportedField(f"{self} is infinite")

    def dot(self, u: Sequence, v: Sequence):
        acc = self.zero
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc

    def row_reduce(self, rows: list[list]) -> tuple[list[list], list[int]]:
        """Reduced row echelon form; returns (nonzero rows, pivot columns).

        ``rows`` is consumed.
        """
        m = len(rows)
        n = len(rows[0]) if m else 0
        pivots: list[int] = []
        r = 0
        zero = self.zero
        for c in range(n):
            piv = -1
            for i in range(r, m):
                if rows[i][c] != zero:
                    piv = i
                    break
            if piv < 0:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pr = rows[r]
            if pr[c] != self.one:
                s = self.inv(pr[c])
                pr = rows[r] = [self.mul(s, x) for x in pr]
            for i in range(m):
                if i != r:
                    f = rows[i][c]
                    if f != zero:
                        rows[i] = [self.sub(a, self.mul(f, b)) for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return rows[:r], pivots

    def to_json(self) -> dict:
        raise NotImplementedError

    def scalar(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))


class Rationals(Field):
    is_finite = False
    char = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return 1 / a

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            raise MalformedInput(f"not a rational: {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise MalformedInput(f"not a rational: {x!r}")

    def parse(self, s):
        if isinstance(s, int) and not isinstance(s, bool):
            return Fraction(s)
        if not isinstance(s, str):
            raise MalformedInput(f"not a rational literal: {s!r}")
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"not a rational literal: {s!r}") from exc

    def format(self, a):
        return str(a)

    def dot(self, u, v):
        return sum((a * b for a, b in zip(u, v)), Fraction(0))

    def row_reduce(self, rows):
        m = len(rows)
        n = len(rows[0]) if m else 0
        pivots: list[int] = []
        r = 0
        for c in range(n):
            piv = -1
            for i in range(r, m):
                if rows[i][c]:
                    piv = i
                    break
            if piv < 0:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pr = rows[r]
            if pr[c] != 1:
                s = 1 / pr[c]
                pr = rows[r] = [s * x for x in pr]
            for i in range(m):
                if i != r:
                    f = rows[i][c]
                    if f:
                        rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return rows[:r], pivots

    def to_json(self):
        return {"type": "Q"}


QQ = Rationals()


class FiniteField(Field):
    """GF(p^k) with a monic irreducible defining polynomial.

    Without an explicit modulus the smallest irreducible (by integer code,
    see ``smallest_irreducible``) is used.
    """

    is_finite = True

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise MalformedInput(f"characteristic {p} is not prime")
        if k < 1:
            raise MalformedInput("extension degree must be >= 1")
        if p ** k > _MAX_ORDER:
            raise UnsupportedField(f"GF({p}^{k}) exceeds the supported order 2^20")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise MalformedInput("modulus must be monic of degree k")
            if not is_irreducible(modulus, p):
                raise MalformedInput(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.q = p ** k
        self.char = p
        self.order = self.q
        self.zero = 0
        self.one = 1
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add_table: list[list[int]] | None = None
        self._inv_table: list[int] | None = None
        if k > 1:
            self._build_tables()
        else:
            self._inv_table = [0] + [pow(a, p - 2, p) for a in range(1, p)] if p <= 4096 else None

    # identity
    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    @property
    def is_default_modulus(self) -> bool:
        return self.modulus == smallest_irreducible(self.p, self.k)

    # digits <-> int
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(ds)):
            a = a * self.p + (c % self.p)
        return a

    def _poly_mul_elem(self, a: int, b: int) -> int:
        prod = _poly_mul(self.digits(a), self.digits(b), self.p)
        return self.from_digits(_poly_mod(prod, self.modulus, self.p))

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _build_tables(self):
        q, p = self.q, self.p
        if p != 2 and q <= _ADD_TABLE_LIMIT:
            self._add_table = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]
        if q <= _LOG_TABLE_LIMIT:
            for g in range(2, q):
                exp = [1]
                x = 1
                for _ in range(q - 2):
                    x = self._poly_mul_elem(x, g)
                    if x == 1:
                        break
                    exp.append(x)
                if len(exp) == q - 1:
                    log = [0] * q
                    for e, v in enumerate(exp):
                        log[v] = e
                    self._exp = exp + exp
                    self._log = log
                    return
            raise AssertionError("no primitive element")  # pragma: no cover

    # arithmetic
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._digit_add(a, b)

    def neg(self, a):
        if self.p == 2 or a == 0:
            return a
        if self.k == 1:
            return self.p - a
        p = self.p
        return self.from_digits([(p - c) % p for c in self.digits(a)])

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._poly_mul_elem(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.k == 1:
            if self._inv_table is not None:
                return self._inv_table[a]
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        r, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                r = self._poly_mul_elem(r, base)
            base = self._poly_mul_elem(base, base)
            e >>= 1
        return r

    def elements(self):
        return iter(range(self.q))

    def from_int(self, n: int):
        return n % self.p   # constants are the codes 0 .. p-1

    def coerce(self, x):
        if isinstance(x, bool):
            raise MalformedInput(f"not a field element: {x!r}")
        if isinstance(x, int):
            if self.k == 1:
                return x % self.p
            if 0 <= x < self.q:
                return x
            raise MalformedInput(f"integer code {x} outside GF({self.q})")
        if isinstance(x, (list, tuple)):
            if len(x) > self.k:
                raise MalformedInput(f"too many coefficients for GF({self.q}): {x!r}")
            return self.from_digits([int(c) for c in x])
        if isinstance(x, str):
            return self.parse(x)
        raise MalformedInput(f"not a field element: {x!r}")

    _list_re = re.compile(r"^\[\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\]$")

    def parse(self, s):
        if isinstance(s, int) and not isinstance(s, bool):
            return self.coerce(s)
        if not isinstance(s, str):
            raise MalformedInput(f"not a field element literal: {s!r}")
        t = s.strip()
        if self._list_re.match(t):
            inner = t[1:-1].strip()
            coeffs = [int(c) for c in inner.split(",")] if inner else []
            return self.coerce(coeffs)
        if re.fullmatch(r"-?\d+", t):
            v = int(t)
            if self.k == 1 or 0 <= v < self.p:
                return v % self.p
        raise MalformedInput(f"not an element of {self!r}: {s!r}")

    def format(self, a):
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self.digits(a)) + "]"

    def dot(self, u, v):
        if self.k == 1:
            return sum(a * b for a, b in zip(u, v)) % self.p
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = self.add(acc, self.mul(a, b))
        return acc

    def row_reduce(self, rows):
        if self.k > 1:
            return Field.row_reduce(self, rows)
        p = self.p
        m = len(rows)
        n = len(rows[0]) if m else 0
        pivots: list[int] = []
        r = 0
        for c in range(n):
            piv = -1
            for i in range(r, m):
                if rows[i][c]:
                    piv = i
                    break
            if piv < 0:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pr = rows[r]
            if pr[c] != 1:
                s = self.inv(pr[c])
                pr = rows[r] = [(s * x) % p for x in pr]
            for i in range(m):
                if i != r:
                    f = rows[i][c]
                    if f:
                        if p == 2:
                            rows[i] = [a ^ b for a, b in zip(rows[i], pr)]
                        else:
                            rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return rows[:r], pivots

    def to_json(self):
        out: dict = {"type": "GF", "p": self.p, "k": self.k}
        if not self.is_default_modulus:
            out["modulus"] = list(self.modulus)
        return out

    # extensions and embeddings
    def extension(self, degree: int) -> "FiniteField":
        if degree == 1:
            return self
        return FiniteField(self.p, self.k * degree)

    def embedding_into(self, big: "FiniteField") -> Callable[[int], int]:
        return _embedding(self, big)


@lru_cache(maxsize=None)
def _embedding(small: FiniteField, big: FiniteField) -> Callable[[int], int]:
    if small == big:
        return lambda a: a
    if small.p != big.p or big.k % small.k:
        raise FieldMismatch(f"{small!r} does not embed in {big!r}")
    if small.k == 1:
        # constants have the same integer code in every extension
        return lambda a: a
    # image of the generator x: the first root of small.modulus in big
    root = None
    for cand in big.elements():
        acc = 0
        power = 1
        for c in small.modulus:
            if c:
                acc = big.add(acc, big.mul(c % big.p, power))
            power = big.mul(power, cand)
        if acc == 0:
            root = cand
            break
    assert root is not None
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], root))
    table = []
    for a in range(small.q):
        acc = 0
        for c, pw in zip(small.digits(a), powers):
            if c:
                acc = big.add(acc, big.mul(c, pw))
        table.append(acc)
    return table.__getitem__


def embed_values(small: Field, big: Field) -> Callable:
    if small == big:
        return lambda a: a
    if isinstance(small, FiniteField) and isinstance(big, FiniteField):
        return small.embedding_into(big)
    raise FieldMismatch(f"{small!r} does not embed in {big!r}")


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    """Cached constructor with the default modulus."""
    return FiniteField(p, k)


def field_from_json(data: Any) -> Field:
    if not isinstance(data, dict) or "type" not in data:
        raise MalformedInput(f"bad field spec: {data!r}")
    if data["type"] == "Q":
        return QQ
    if data["type"] == "GF":
        try:
            p, k = int(data["p"]), int(data.get("k", 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad field spec: {data!r}") from exc
        if "modulus" in data:
            return FiniteField(p, k, data["modulus"])
        return GF(p, k)
    raise MalformedInput(f"unknown field type {data['type']!r}")


def parse_field(text: str) -> Field:
    """Parse 'Q', 'GF<p>', 'GF<p>^<k>' or 'GF<q>' for a prime power q."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\(?(\d+)(?:\^(\d+))?\)?", t)
    if not m:
        raise MalformedInput(f"bad field {text!r}; expected Q or GF<p>[^k]")
    base = int(m.group(1))
    if m.group(2):
        if not is_prime(base):
            raise MalformedInput(f"GF{base}^k needs a prime base")
        return GF(base, int(m.group(2)))
    pk = _prime_power(base)
    if pk is None:
        raise MalformedInput(f"{base} is not a prime power")
    return GF(*pk)


class Scalar:
    """A field element bound to its field, with operator support."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = field.coerce(value)

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return Scalar(self.field, other)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.div(self.value, o.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field!r}, {self.field.format(self.value)})"


def scalar_ops(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Dispatch one of add, mul, inv, neg (plus sub, div)."""
    if op in ("add", "mul", "sub", "div"):
        if b is None:
            raise MalformedInput(f"{op} needs two operands")
        if a.field != b.field:
            raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
        return {"add": a.__add__, "mul": a.__mul__, "sub": a.__sub__, "div": a.__truediv__}[op](b)
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise MalformedInput(f"unknown scalar op {op!r}")
