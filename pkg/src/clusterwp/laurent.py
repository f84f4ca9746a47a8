"""Sparse multivariate Laurent polynomials and rational functions over Q(i).

Representation choices that the rest of the package leans on:

* A ``VarTable`` fixes an ordered tuple of variable names; every polynomial
  carries its table and cross-table arithmetic is an error, never a silent
  union.
* Terms map dense exponent vectors (tuples of ints, negative allowed) to
  nonzero Gaussian-rational coefficients.  Zero coefficients are pruned on
  every operation, so emptiness <=> the zero polynomial.
* ``RationalFn`` is an unreduced num/den pair.  There is deliberately *no*
  multivariate gcd: equality is decided by cross-multiplication, and the
  only simplification ever applied is moving the denominator's monomial
  content into the numerator (so monomial denominators normalize to 1).
  Exact division exists for the one case the theory needs: deciding whether
  a fraction is a Laurent polynomial.
* The monomial order is graded lexicographic in table order; it makes
  single-divisor exact division deterministic and terminating once the
  monomial content has been stripped.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Iterator, Mapping

from clusterwp.exact import GaussianRational

__all__ = [
    "DenominatorZero",
    "EvaluationError",
    "Inhomogeneous",
    "LaurentError",
    "LaurentPoly",
    "NegativePowerOfZero",
    "NotDivisible",
    "NotLaurent",
    "RationalFn",
    "UnboundVariable",
    "VarTable",
]


class LaurentError(Exception):
    """Base class for algebraic failure modes in this module."""


class NotDivisible(LaurentError):
    """Exact polynomial division has a nonzero remainder."""


class NotLaurent(LaurentError):
    """A rational function is not a Laurent polynomial."""


class Inhomogeneous(LaurentError):
    """Terms carry different weighted degrees."""


class EvaluationError(LaurentError):
    """Base class for point-evaluation failures."""


class DenominatorZero(EvaluationError):
    """A denominator evaluated (or substituted) to zero."""


class NegativePowerOfZero(EvaluationError):
    """A negative exponent met a zero base during evaluation."""


class UnboundVariable(EvaluationError):
    """A variable occurring in the expression has no assigned value."""


_IDENT_RE = _re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


class VarTable:
    """Ordered, duplicate-free tuple of variable names.

    The name ``i`` is reserved for the imaginary unit in the expression
    grammar and is rejected here so charts can always be parsed back.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        seen = set()
        for n in names:
            if not _IDENT_RE.match(n):
                raise ValueError(f"invalid variable name: {n!r}")
            if n == "i":
                raise ValueError("variable name 'i' is reserved for the imaginary unit")
            if n in seen:
                raise ValueError(f"duplicate variable name: {n!r}")
            seen.add(n)
        self.names = names
        self._index = {n: k for k, n in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}; table has {self.names}") from None

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarTable({', '.join(self.names)})"


def _grlex(exps) -> tuple:
    return (sum(exps), exps)


def _coerce_coeff(value) -> GaussianRational:
    return GaussianRational.of(value)


class LaurentPoly:
    """Sparse Laurent polynomial over Q(i) on a fixed VarTable."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[tuple, object]):
        width = len(table)
        clean = {}
        for exps, coeff in terms.items():
            c = _coerce_coeff(coeff)
            if not c:
                continue
            t = tuple(exps)
            if len(t) != width:
                raise ValueError(
                    f"exponent vector {t} does not match table of width {width}")
            if t in clean:
                c = clean[t] + c
                if not c:
                    del clean[t]
                    continue
            clean[t] = c
        self.table = table
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, table: VarTable) -> "LaurentPoly":
        return cls(table, {})

    @classmethod
    def constant(cls, table: VarTable, value) -> "LaurentPoly":
        return cls(table, {(0,) * len(table): value})

    @classmethod
    def variable(cls, table: VarTable, name: str) -> "LaurentPoly":
        exps = [0] * len(table)
        exps[table.index(name)] = 1
        return cls(table, {tuple(exps): 1})

    @classmethod
    def monomial(cls, table: VarTable, exps, coeff=1) -> "LaurentPoly":
        """Build coeff * prod(x_v^e_v); exps is a name->exp map or a vector."""
        if isinstance(exps, Mapping):
            vec = [0] * len(table)
            for name, e in exps.items():
                vec[table.index(name)] = int(e)
            exps = tuple(vec)
        return cls(table, {tuple(exps): coeff})

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables_used(self) -> set:
        used = set()
        for exps in self.terms:
            for name, e in zip(self.table.names, exps):
                if e:
                    used.add(name)
        return used

    # -- structure -------------------------------------------------------

    def leading_exponents(self) -> tuple:
        """Exponent vector of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex)

    def monomial_content(self) -> tuple:
        """Per-variable minimum exponent across all terms."""
        if not self.terms:
            raise ValueError("zero polynomial has no monomial content")
        it = iter(self.terms)
        content = list(next(it))
        for exps in it:
            for k, e in enumerate(exps):
                if e < content[k]:
                    content[k] = e
        return tuple(content)

    def shifted(self, delta) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector delta."""
        return LaurentPoly(self.table, {
            tuple(a + b for a, b in zip(exps, delta)): c
            for exps, c in self.terms.items()
        })

    # -- ring operations -------------------------------------------------

    def _require_same(self, other: "LaurentPoly"):
        if self.table != other.table:
            raise ValueError(
                f"variable tables differ: {self.table!r} vs {other.table!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPoly.constant(self.table, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._require_same(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps)
            s = c if s is None else s + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return LaurentPoly(self.table, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else -_coerce_coeff(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return LaurentPoly(self.table, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = _coerce_coeff(other)
            return LaurentPoly(self.table, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._require_same(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return LaurentPoly(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if not self.is_monomial():
                raise ValueError(
                    "negative power of a non-monomial Laurent polynomial; "
                    "lift to RationalFn instead")
            (exps, coeff), = self.terms.items()
            inv = LaurentPoly(self.table, {tuple(-e for e in exps): coeff.inverse()})
            return inv ** (-exponent)
        result = LaurentPoly.constant(self.table, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * _coerce_coeff(other).inverse()
        if isinstance(other, LaurentPoly):
            return RationalFn(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly)
                and self.table == other.table and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self.terms.items())))

    # -- calculus / degrees ----------------------------------------------

    def partial(self, name: str) -> "LaurentPoly":
        """Formal partial derivative (term-wise power rule)."""
        k = self.table.index(name)
        out = {}
        for exps, c in self.terms.items():
            e = exps[k]
            if not e:
                continue
            key = exps[:k] + (e - 1,) + exps[k + 1:]
            s = out.get(key)
            s = c * e if s is None else s + c * e
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(self.table, out)

    def evaluate(self, values: Mapping[str, object]) -> GaussianRational:
        """Exact evaluation; distinct errors for the distinct failure modes."""
        point = []
        for k, name in enumerate(self.table.names):
            occurs = any(exps[k] for exps in self.terms)
            if not occurs:
                point.append(None)
                continue
            if name not in values:
                raise UnboundVariable(f"no value for variable {name!r}")
            point.append(GaussianRational.of(values[name]))
        total = GaussianRational.of(0)
        for exps, c in self.terms.items():
            term = c
            for k, e in enumerate(exps):
                if not e:
                    continue
                base = point[k]
                if not base and e < 0:
                    raise NegativePowerOfZero(
                        f"{self.table.names[k]} = 0 raised to power {e}")
                term = term * base ** e
            total = total + term
        return total

    def weighted_degree(self, weights: Mapping[str, int]) -> int:
        """Common weighted degree of all terms, else Inhomogeneous."""
        if not self.terms:
            raise ValueError("weighted degree of the zero polynomial")
        degrees = set()
        for exps in self.terms:
            d = 0
            for k, e in enumerate(exps):
                if e:
                    name = self.table.names[k]
                    if name not in weights:
                        raise KeyError(f"no weight for variable {name!r}")
                    d += e * weights[name]
            degrees.add(d)
        if len(degrees) > 1:
            raise Inhomogeneous(f"term degrees {sorted(degrees)}")
        return degrees.pop()

    # -- division --------------------------------------------------------

    def divide_exact(self, den: "LaurentPoly") -> "LaurentPoly":
        """Exact single-divisor division; raises NotDivisible on remainder.

        Monomial content is stripped first so the loop runs over honest
        polynomials where graded lex is a well-order; divisibility in the
        Laurent ring is equivalent to divisibility of the content-free
        parts, because a content-free polynomial has no variable factors.
        """
        if isinstance(den, (int, Fraction, GaussianRational)):
            den = LaurentPoly.constant(self.table, den)
        self._require_same(den)
        if den.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self
        cn = self.monomial_content()
        cd = den.monomial_content()
        n = {tuple(a - b for a, b in zip(e, cn)): c for e, c in self.terms.items()}
        d = {tuple(a - b for a, b in zip(e, cd)): c for e, c in den.terms.items()}
        ld = max(d, key=_grlex)
        dl = d[ld]
        q = {}
        r = n
        while r:
            lr = max(r, key=_grlex)
            diff = tuple(a - b for a, b in zip(lr, ld))
            if any(x < 0 for x in diff):
                raise NotDivisible(
                    f"{self.to_expr()} is not divisible by {den.to_expr()}")
            c = r[lr] / dl
            q[diff] = c
            for de, dc in d.items():
                key = tuple(a + b for a, b in zip(diff, de))
                s = r.get(key)
                s = -(c * dc) if s is None else s - c * dc
                if s:
                    r[key] = s
                else:
                    r.pop(key, None)
        shift = tuple(a - b for a, b in zip(cn, cd))
        return LaurentPoly(self.table, q).shifted(shift)

    # -- conversions -----------------------------------------------------

    def as_rational(self) -> "RationalFn":
        return RationalFn(self, LaurentPoly.constant(self.table, 1))

    def canonical_key(self) -> tuple:
        """Hashable, totally ordered key; equal polynomials share it."""
        return tuple(sorted(
            (exps, c.re, c.im) for exps, c in self.terms.items()
        ))

    # -- rendering -------------------------------------------------------

    def to_expr(self) -> str:
        """Deterministic expression-grammar rendering (leading term first)."""
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[exps]
            factors = []
            for name, e in zip(self.table.names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(_gaussian_expr(c))
            elif c == GaussianRational.of(1):
                parts.append(mono)
            elif c == GaussianRational.of(-1):
                parts.append(f"-{mono}")
            elif not c.im:
                parts.append(f"{c.re}*{mono}")
            else:
                parts.append(f"({_gaussian_expr(c)})*{mono}")
        text = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                text += f" - {p[1:]}"
            else:
                text += f" + {p}"
        return text

    __str__ = to_expr

    def __repr__(self) -> str:
        return f"<LaurentPoly {self.to_expr()} over {self.table.names}>"


def _gaussian_expr(c: GaussianRational) -> str:
    """Render a coefficient so the expression grammar parses it back."""
    if not c.im:
        return str(c.re)
    if c.im == 1:
        imag = "i"
    elif c.im == -1:
        imag = "-i"
    else:
        imag = f"{c.im}*i"
    if not c.re:
        return imag
    joiner = "+" if not imag.startswith("-") else ""
    return f"{c.re}{joiner}{imag}"


class RationalFn:
    """Quotient of Laurent polynomials, normalized only up to monomial content.

    The denominator is content-free (minimum exponent zero in every
    variable) and monic in the graded-lex leading coefficient; a monomial
    denominator therefore normalizes to 1 with everything absorbed into the
    (Laurent) numerator.  Equality is cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = 1):
        if isinstance(den, (int, Fraction, GaussianRational)):
            den = LaurentPoly.constant(num.table, den)
        num._require_same(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = LaurentPoly.constant(num.table, 1)
        else:
            content = den.monomial_content()
            if any(content):
                neg = tuple(-e for e in content)
                den = den.shifted(neg)
                num = num.shifted(neg)
            lead = den.terms[den.leading_exponents()]
            if lead != GaussianRational.of(1):
                inv = lead.inverse()
                den = den * inv
                num = num * inv
        self.num = num
        self.den = den

    @property
    def table(self) -> VarTable:
        return self.num.table

    @classmethod
    def zero(cls, table: VarTable) -> "RationalFn":
        return LaurentPoly.zero(table).as_rational()

    @classmethod
    def constant(cls, table: VarTable, value) -> "RationalFn":
        return LaurentPoly.constant(table, value).as_rational()

    @classmethod
    def variable(cls, table: VarTable, name: str) -> "RationalFn":
        return LaurentPoly.variable(table, name).as_rational()

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    # -- field operations ------------------------------------------------

    @staticmethod
    def _lift(value, table: VarTable):
        if isinstance(value, RationalFn):
            return value
        if isinstance(value, LaurentPoly):
            return value.as_rational()
        if isinstance(value, (int, Fraction, GaussianRational)):
            return RationalFn.constant(table, value)
        return None

    def __add__(self, other):
        other = self._lift(other, self.table)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other, self.table)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        out = object.__new__(RationalFn)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other):
        other = self._lift(other, self.table)
        if other is None:
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero:
            raise DenominatorZero("inverse of the zero rational function")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other, self.table)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other, self.table)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFn(self.num ** exponent, self.den ** exponent)

    def __eq__(self, other) -> bool:
        other = self._lift(other, self.table)
        if other is None:
            return NotImplemented
        if self.table != other.table:
            return False
        return (self.num * other.den) == (other.num * self.den)

    __hash__ = None  # cross-multiplication equality is not hash-compatible

    # -- conversions and evaluation --------------------------------------

    def as_laurent(self) -> LaurentPoly:
        """The fraction as a Laurent polynomial, or NotLaurent."""
        if self.den == LaurentPoly.constant(self.table, 1):
            return self.num
        try:
            return self.num.divide_exact(self.den)
        except NotDivisible as exc:
            raise NotLaurent(str(exc)) from None

    def evaluate(self, values: Mapping[str, object]) -> GaussianRational:
        d = self.den.evaluate(values)
        if not d:
            raise DenominatorZero(f"denominator {self.den.to_expr()} vanishes")
        return self.num.evaluate(values) * d.inverse()

    def substitute(self, bindings: Mapping[str, "RationalFn"],
                   into: VarTable) -> "RationalFn":
        """Substitute each variable by a rational function over `into`."""
        num = _substitute_poly(self.num, bindings, into)
        den = _substitute_poly(self.den, bindings, into)
        if den.is_zero:
            raise DenominatorZero(
                f"denominator {self.den.to_expr()} vanishes under substitution")
        return num / den

    def weighted_degree(self, weights: Mapping[str, int]) -> int:
        return self.num.weighted_degree(weights) - self.den.weighted_degree(weights)

    def variables_used(self) -> set:
        return self.num.variables_used() | self.den.variables_used()

    def to_expr(self) -> str:
        if self.den == LaurentPoly.constant(self.table, 1):
            return self.num.to_expr()
        return f"({self.num.to_expr()})/({self.den.to_expr()})"

    __str__ = to_expr

    def __repr__(self) -> str:
        return f"<RationalFn {self.to_expr()}>"


def _substitute_poly(poly: LaurentPoly, bindings: Mapping[str, RationalFn],
                     into: VarTable) -> RationalFn:
    total = RationalFn.zero(into)
    for exps, coeff in poly.terms.items():
        term = RationalFn.constant(into, coeff)
        for k, e in enumerate(exps):
            if not e:
                continue
            name = poly.table.names[k]
            if name not in bindings:
                raise UnboundVariable(f"no substitution for variable {name!r}")
            value = bindings[name]
            if e < 0 and value.is_zero:
                raise DenominatorZero(
                    f"substitution sends {name} to zero but it appears "
                    f"with exponent {e}")
            term = term * value ** e
        total = total + term
    return total
