"""Exact sparse multivariate polynomials over Q or a prime field.

Rings carry positive integer variable weights and a monomial order.  A
:class:`Polynomial` is immutable and always stored in canonical form: terms
strictly decreasing under the ring's order, no zero coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

INHOMOGENEOUS = "inhomogeneous"


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------


class RationalField:
    """The field Q with :class:`fractions.Fraction` coefficients."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            raise TypeError("floating point coefficients are not supported")
        return Fraction(value)

    def inv(self, a: Fraction) -> Fraction:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def to_str(self, a: Fraction) -> str:
        return str(a)

    def spec(self) -> str:
        return "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Residues modulo a prime ``p``, stored as ints in ``[0, p)``."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        if isinstance(value, float):
            raise TypeError("floating point coefficients are not supported")
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def to_str(self, a: int) -> str:
        return str(a)

    def spec(self) -> str:
        return f"fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str):
    """Parse ``"q"`` or ``"fp:<p>"``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational"):
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


def _grevlex_part(exps, weights):
    deg = 0
    for e, w in zip(exps, weights):
        deg += e * w
    return (deg,) + tuple(-e for e in reversed(exps))


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex`` (weighted), ``lex`` or ``block`` elimination of the first
    ``block`` variables (weighted grevlex inside each block)."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block order needs a front block of size >= 1")

    def key_function(self, weights: Sequence[int]) -> Callable[[tuple], tuple]:
        weights = tuple(weights)
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return lambda e: _grevlex_part(e, weights)
        s = self.block
        w1, w2 = weights[:s], weights[s:]
        return lambda e: _grevlex_part(e[:s], w1) + _grevlex_part(e[s:], w2)

    def __str__(self):
        return f"block({self.block})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(size: int) -> MonomialOrder:
    return MonomialOrder("block", size)


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class PolynomialRing:
    names: tuple
    weights: tuple
    order: MonomialOrder = GREVLEX
    field: object = QQ
    _index: dict = dc_field(default=None, compare=False, hash=False, repr=False)
    _key: Callable = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        weights = tuple(int(w) for w in self.weights)
        if len(names) != len(weights):
            raise ValueError("one weight per variable is required")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for nm in names:
            if not _NAME_RE.match(nm):
                raise ValueError(f"invalid variable name {nm!r}")
        if any(w < 1 for w in weights):
            raise ValueError("variable weights must be >= 1")
        if self.order.kind == "block" and self.order.block >= len(names):
            raise ValueError("elimination block must leave at least one variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(names)})
        object.__setattr__(self, "_key", self.order.key_function(weights))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in ring") from None

    def key(self, exps: tuple) -> tuple:
        return self._key(exps)

    def degree_of(self, exps: tuple) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def with_order(self, order: MonomialOrder) -> PolynomialRing:
        return PolynomialRing(self.names, self.weights, order, self.field)

    def with_field(self, fld) -> PolynomialRing:
        return PolynomialRing(self.names, self.weights, self.order, fld)

    def drop(self, names: Iterable[str]) -> PolynomialRing:
        names = set(names)
        keep = [(nm, w) for nm, w in zip(self.names, self.weights) if nm not in names]
        return PolynomialRing(
            tuple(nm for nm, _ in keep), tuple(w for _, w in keep), GREVLEX, self.field
        )

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def gens(self) -> list[Polynomial]:
        return [self.var(nm) for nm in self.names]

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def __repr__(self):
        vs = ", ".join(
            nm if w == 1 else f"{nm}:{w}" for nm, w in zip(self.names, self.weights)
        )
        return f"PolynomialRing([{vs}], order={self.order}, field={self.field!r})"


def polynomial_ring(variables, order=GREVLEX, fld=QQ) -> PolynomialRing:
    """Build a ring from names or ``(name, weight)`` pairs."""
    names, weights = [], []
    for v in variables:
        if isinstance(v, str):
            names.append(v)
            weights.append(1)
        else:
            names.append(v[0])
            weights.append(v[1])
    return PolynomialRing(tuple(names), tuple(weights), order, fld)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable polynomial; ``terms`` is a tuple of ``(coeff, exps)``."""

    __slots__ = ("ring", "terms", "_dict", "_hash")

    def __init__(self, ring: PolynomialRing, coeffs: Mapping[tuple, object]):
        fld = ring.field
        clean = {}
        for e, c in coeffs.items():
            if len(e) != ring.nvars:
                raise ValueError("exponent vector length does not match ring")
            c = fld(c)
            if c:
                clean[tuple(e)] = c
        key = ring._key
        self.ring = ring
        self.terms = tuple(
            (clean[e], e) for e in sorted(clean, key=key, reverse=True)
        )
        self._dict = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, clean: dict) -> Polynomial:
        # caller guarantees exact field elements and no zeros
        obj = cls.__new__(cls)
        obj.ring = ring
        key = ring._key
        obj.terms = tuple((clean[e], e) for e in sorted(clean, key=key, reverse=True))
        obj._dict = clean
        obj._hash = None
        return obj

    # -- accessors ---------------------------------------------------------

    def as_dict(self) -> dict:
        return dict(self._dict)

    def coefficient(self, exps) -> object:
        return self._dict.get(tuple(exps), self.ring.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][1]

    @property
    def leading_coefficient(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][0]

    def monomials(self) -> list[tuple]:
        return [e for _, e in self.terms]

    def variables(self) -> set[str]:
        used = set()
        for _, e in self.terms:
            used.update(self.ring.names[i] for i, x in enumerate(e) if x)
        return used

    def is_constant(self) -> bool:
        return all(not any(e) for _, e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"ring mismatch: {self.ring!r} vs {other.ring!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        fld = self.ring.field
        out = dict(self._dict)
        for e, c in other._dict.items():
            s = fld.add(out[e], c) if e in out else c
            if s:
                out[e] = s
            else:
                del out[e]
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return Polynomial._raw(self.ring, {e: fld.neg(c) for e, c in self._dict.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        fld = self.ring.field
        out: dict = {}
        for e1, c1 in self._dict.items():
            for e2, c2 in other._dict.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = fld.mul(c1, c2)
                if e in out:
                    s = fld.add(out[e], c)
                    if s:
                        out[e] = s
                    else:
                        del out[e]
                else:
                    out[e] = c
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        fld = self.ring.field
        c = fld(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: fld.mul(x, c) for e, x in self._dict.items()})

    def monic(self) -> Polynomial:
        return self.scale(self.ring.field.inv(self.leading_coefficient))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, self.terms))
        return self._hash

    # -- grading -----------------------------------------------------------

    def weighted_degree(self):
        """Common weighted degree, or :data:`INHOMOGENEOUS`."""
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        degs = {self.ring.degree_of(e) for _, e in self.terms}
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return not self.terms or self.weighted_degree() != INHOMOGENEOUS

    def change_ring(self, ring: PolynomialRing) -> Polynomial:
        """Re-express in ``ring`` by variable name (missing variables must be unused)."""
        if ring == self.ring:
            return self
        pos = []
        for i, nm in enumerate(self.ring.names):
            pos.append(ring._index.get(nm))
        out = {}
        for c, e in self.terms:
            new = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise RingMismatchError(
                            f"variable {self.ring.names[i]} not present in target ring"
                        )
                    new[pos[i]] = x
            out[tuple(new)] = ring.field(c) if ring.field == self.ring.field else ring.field(
                _lift(c, self.ring.field)
            )
        return Polynomial(ring, out)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _lift(c, fld):
    # prime-field residues move to Q as their canonical representative
    return c if isinstance(c, Fraction) else Fraction(c)


def weighted_degree(p: Polynomial):
    return p.weighted_degree()


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


# ---------------------------------------------------------------------------
# ring maps
# ---------------------------------------------------------------------------


class RingMap:
    """Substitution homomorphism ``source -> target``, one image per variable."""

    def __init__(self, source: PolynomialRing, target: PolynomialRing, images, graded=False):
        if isinstance(images, Mapping):
            # unnamed variables map to the same-named target variable
            images = [
                images[nm] if nm in images else target.var(nm) for nm in source.names
            ]
        images = tuple(target(im) if not isinstance(im, Polynomial) else im for im in images)
        if len(images) != source.nvars:
            raise ValueError("one image per source variable is required")
        for im in images:
            if im.ring != target:
                raise RingMismatchError("image not in target ring")
        if graded:
            for nm, w, im in zip(source.names, source.weights, images):
                if im and im.weighted_degree() != w:
                    raise ValueError(
                        f"image of {nm} has degree {im.weighted_degree()}, expected {w}"
                    )
        self.source = source
        self.target = target
        self.images = images
        self.graded = graded

    @classmethod
    def identity(cls, ring: PolynomialRing) -> RingMap:
        return cls(ring, ring, ring.gens(), graded=True)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_map(self, p)

    def image(self, name: str) -> Polynomial:
        return self.images[self.source.index(name)]

    def linear_matrix(self, variables: Sequence[str] | None = None):
        """Coefficient matrix of a linear map (rows: source variables)."""
        variables = list(variables or self.target.names)
        cols = {nm: j for j, nm in enumerate(variables)}
        rows = []
        for im in self.images:
            row = [self.target.field.zero] * len(variables)
            for c, e in im.terms:
                if sum(e) != 1:
                    raise ValueError("map is not linear")
                nm = self.target.names[e.index(1)]
                row[cols[nm]] = c
            rows.append(row)
        return rows

    def __repr__(self):
        parts = ", ".join(f"{nm} -> {im}" for nm, im in zip(self.source.names, self.images))
        return f"RingMap({parts})"


def apply_map(m: RingMap, p: Polynomial) -> Polynomial:
    if p.ring != m.source:
        raise RingMismatchError("polynomial is not in the source ring of the map")
    tgt = m.target
    result = tgt.zero()
    powers: dict = {}
    for c, e in p.terms:
        term = tgt.constant(_lift(c, p.ring.field) if tgt.field != p.ring.field else c)
        for i, x in enumerate(e):
            if x:
                key = (i, x)
                if key not in powers:
                    powers[key] = m.images[i] ** x
                term = term * powers[key]
        result = result + term
    return result


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------


def _format_coeff(c, fld) -> str:
    return fld.to_str(c)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text, e.g. ``3*x01^2*x11 - 1/2*T*x00``."""
    if not p.terms:
        return "0"
    ring, fld = p.ring, p.ring.field
    out = []
    for idx, (c, e) in enumerate(p.terms):
        factors = []
        for nm, x in zip(ring.names, e):
            if x == 1:
                factors.append(nm)
            elif x > 1:
                factors.append(f"{nm}^{x}")
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        if not factors:
            body = _format_coeff(mag, fld)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag, fld) + "*" + "*".join(factors)
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class PolynomialSyntaxError(ValueError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    """Recursive descent over ``+ - * / ^ ( )``, integers and variable names."""

    def __init__(self, ring: PolynomialRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise PolynomialSyntaxError(f"cannot tokenize {text!r} at {pos}")
            num, name, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("sym", sym))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if sym is not None and tok != ("sym", sym):
            raise PolynomialSyntaxError(f"expected {sym!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.tokens):
            raise PolynomialSyntaxError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        if self.peek() == ("sym", "-"):
            self.take()
            p = -self.term()
        else:
            if self.peek() == ("sym", "+"):
                self.take()
            p = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.factor()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            if op == "*":
                p = p * self.factor()
            else:
                kind, val = self.take()
                if kind != "num" or val == 0:
                    raise PolynomialSyntaxError("division only by a nonzero integer")
                p = p.scale(self.ring.field.inv(self.ring.field(val)))
        return p

    def factor(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer")
            base = base**val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring._index:
                raise PolynomialSyntaxError(f"unknown variable {val!r}")
            return self.ring.var(val)
        if (kind, val) == ("sym", "("):
            p = self.expr()
            self.take(")")
            return p
        if (kind, val) == ("sym", "-"):
            return -self.factor()
        raise PolynomialSyntaxError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    return ring.parse(text)


# ---------------------------------------------------------------------------
# monomial helpers shared by the ideal engine
# ---------------------------------------------------------------------------


def monomials_of_degree(weights: Sequence[int], degree: int):
    """Yield all exponent tuples of the given weighted degree."""
    n = len(weights)
    exps = [0] * n

    def rec(i, remaining):
        if i == n - 1:
            w = weights[i]
            if remaining % w == 0:
                exps[i] = remaining // w
                yield tuple(exps)
                exps[i] = 0
            return
        w = weights[i]
        for x in range(remaining // w, -1, -1):
            exps[i] = x
            yield from rec(i + 1, remaining - x * w)
        exps[i] = 0

    if degree < 0:
        return
    if n == 0:
        if degree == 0:
            yield ()
        return
    yield from rec(0, degree)


def divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))
