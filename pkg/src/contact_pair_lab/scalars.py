"""Exact multivariate rational functions over the rationals.

ScalarExpr is the coefficient field for the whole library: every tensor
component is a canonical fraction of multivariate polynomials with
Fraction coefficients.  Equality of canonical forms is the only notion of
identity used by the symbolic certifiers; "equals zero" literally means
"normalizes to the unique zero representation".

Canonical form: numerator and denominator are gcd-reduced, the denominator
is monic with respect to the graded-lexicographic order on the declared
coordinate tuple, and zero is (0)/(1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponents = Tuple[int, ...]
Terms = Dict[Exponents, Fraction]

Rational = Fraction  # arbitrary-precision, always reduced, positive denominator


class ScalarError(Exception):
    """Base class for scalar-algebra errors."""


class ParseError(ScalarError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DivisionByZero(ScalarError):
    pass


class PoleError(ScalarError):
    pass


class UnknownVariable(ScalarError):
    pass


def _grlex_key(exponents: Exponents) -> Tuple[int, Exponents]:
    return (sum(exponents), exponents)


def _terms_add(a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for exp, coeff in b.items():
        new = out.get(exp, Fraction(0)) + coeff
        if new:
            out[exp] = new
        else:
            out.pop(exp, None)
    return out


def _terms_neg(a: Terms) -> Terms:
    return {exp: -coeff for exp, coeff in a.items()}


def _terms_mul(a: Terms, b: Terms) -> Terms:
    if not a or not b:
        return {}
    out: Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            new = out.get(exp, Fraction(0)) + ca * cb
            if new:
                out[exp] = new
            else:
                out.pop(exp, None)
    return out


def _terms_scale(a: Terms, c: Fraction) -> Terms:
    if not c:
        return {}
    return {exp: coeff * c for exp, coeff in a.items()}


def _leading(a: Terms) -> Tuple[Exponents, Fraction]:
    exp = max(a, key=_grlex_key)
    return exp, a[exp]


def _is_constant(a: Terms) -> bool:
    return not a or (len(a) == 1 and not any(next(iter(a))))


def _monomial_content(a: Terms) -> Exponents:
    it = iter(a)
    content = list(next(it))
    for exp in it:
        content = [min(c, e) for c, e in zip(content, exp)]
        if not any(content):
            break
    return tuple(content)


def _terms_shift(a: Terms, shift: Exponents) -> Terms:
    """Divide every monomial by the given (componentwise smaller) monomial."""
    return {tuple(x - s for x, s in zip(exp, shift)): c for exp, c in a.items()}


def _exact_div(a: Terms, b: Terms) -> Terms:
    """Exact multivariate division; caller guarantees b | a."""
    lead_b, lc_b = _leading(b)
    quotient: Terms = {}
    rem = dict(a)
    while rem:
        lead_r, lc_r = _leading(rem)
        exp = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(e < 0 for e in exp):
            raise ScalarError("inexact polynomial division")
        coeff = lc_r / lc_b
        quotient[exp] = coeff
        rem = _terms_add(rem, _terms_neg(_terms_mul({exp: coeff}, b)))
    return quotient


@lru_cache(maxsize=None)
def _sympy_gens(nvars: int):
    import sympy

    return sympy.symbols(f"_v0:{nvars}")


def _terms_gcd(a: Terms, b: Terms, nvars: int) -> Terms:
    """Monic gcd of two nonzero polynomials in ``nvars`` variables."""
    shift_a = _monomial_content(a)
    shift_b = _monomial_content(b)
    shift = tuple(min(x, y) for x, y in zip(shift_a, shift_b))
    a = _terms_shift(a, shift_a)
    b = _terms_shift(b, shift_b)
    mono = {shift: Fraction(1)}
    if _is_constant(a) or _is_constant(b):
        return mono
    if a == b:
        g = a
    else:
        import sympy

        gens = _sympy_gens(nvars)
        pa = sympy.Poly.from_dict({e: sympy.Rational(c) for e, c in a.items()},
                                  *gens, domain=sympy.QQ)
        pb = sympy.Poly.from_dict({e: sympy.Rational(c) for e, c in b.items()},
                                  *gens, domain=sympy.QQ)
        g = {e: Fraction(c.numerator, c.denominator)
             for e, c in pa.gcd(pb).as_dict().items()}
        if _is_constant(g):
            return mono
    g = _terms_mul(g, mono)
    _, lc = _leading(g)
    return _terms_scale(g, 1 / lc)


class ScalarExpr:
    """Canonical rational function in a fixed tuple of coordinate names."""

    __slots__ = ("vars", "num", "den", "_hash")

    def __init__(self, vars: Tuple[str, ...], num: Terms, den: Terms,
                 _canonical: bool = False):
        self.vars = vars
        if _canonical:
            self.num = num
            self.den = den
        else:
            self.num, self.den = self._normalize(num, den, len(vars))
        self._hash = None

    @staticmethod
    def _normalize(num: Terms, den: Terms, nvars: int) -> Tuple[Terms, Terms]:
        if not den:
            raise DivisionByZero("denominator is identically zero")
        if not num:
            return {}, {(0,) * nvars: Fraction(1)}
        g = _terms_gcd(num, den, nvars)
        if not _is_constant(g):
            num = _exact_div(num, g)
            den = _exact_div(den, g)
        _, lc = _leading(den)
        if lc != 1:
            num = _terms_scale(num, 1 / lc)
            den = _terms_scale(den, 1 / lc)
        return num, den

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, value, vars: Tuple[str, ...]) -> "ScalarExpr":
        c = Fraction(value)
        unit = {(0,) * len(vars): Fraction(1)}
        num = {(0,) * len(vars): c} if c else {}
        return cls(tuple(vars), num, unit, _canonical=True)

    @classmethod
    def variable(cls, name: str, vars: Sequence[str]) -> "ScalarExpr":
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariable(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in vars)
        unit = {(0,) * len(vars): Fraction(1)}
        return cls(vars, {exp: Fraction(1)}, unit, _canonical=True)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return _is_constant(self.num) and _is_constant(self.den)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError("not a constant expression")
        if not self.num:
            return Fraction(0)
        zero = (0,) * len(self.vars)
        return self.num[zero] / self.den[zero]

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "ScalarExpr") -> None:
        if self.vars != other.vars:
            raise ScalarError("mixed coordinate systems")

    def __add__(self, other: "ScalarExpr") -> "ScalarExpr":
        self._check(other)
        num = _terms_add(_terms_mul(self.num, other.den),
                         _terms_mul(other.num, self.den))
        return ScalarExpr(self.vars, num, _terms_mul(self.den, other.den))

    def __sub__(self, other: "ScalarExpr") -> "ScalarExpr":
        self._check(other)
        num = _terms_add(_terms_mul(self.num, other.den),
                         _terms_neg(_terms_mul(other.num, self.den)))
        return ScalarExpr(self.vars, num, _terms_mul(self.den, other.den))

    def __mul__(self, other: "ScalarExpr") -> "ScalarExpr":
        self._check(other)
        return ScalarExpr(self.vars, _terms_mul(self.num, other.num),
                          _terms_mul(self.den, other.den))

    def __truediv__(self, other: "ScalarExpr") -> "ScalarExpr":
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero expression")
        return ScalarExpr(self.vars, _terms_mul(self.num, other.den),
                          _terms_mul(self.den, other.num))

    def __neg__(self) -> "ScalarExpr":
        return ScalarExpr(self.vars, _terms_neg(self.num), dict(self.den),
                          _canonical=True)

    def __pow__(self, n: int) -> "ScalarExpr":
        if n < 0:
            raise ScalarError("negative exponent")
        result = ScalarExpr.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, ScalarExpr) and self.vars == other.vars
                and self.num == other.num and self.den == other.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.num.items()),
                               frozenset(self.den.items())))
        return self._hash

    # -- calculus --------------------------------------------------------

    def differentiate(self, coord: str) -> "ScalarExpr":
        if coord not in self.vars:
            raise UnknownVariable(f"unknown coordinate {coord!r}")
        i = self.vars.index(coord)

        def d(terms: Terms) -> Terms:
            out: Terms = {}
            for exp, coeff in terms.items():
                if exp[i]:
                    new = list(exp)
                    new[i] -= 1
                    key = tuple(new)
                    val = out.get(key, Fraction(0)) + coeff * exp[i]
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
            return out

        # quotient rule: (n/d)' = (n'd - nd')/d^2
        num = _terms_add(_terms_mul(d(self.num), self.den),
                         _terms_neg(_terms_mul(self.num, d(self.den))))
        return ScalarExpr(self.vars, num, _terms_mul(self.den, self.den))

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        values = []
        for v in self.vars:
            if v not in point:
                raise ScalarError(f"point does not assign coordinate {v!r}")
            values.append(Fraction(point[v]))

        def ev(terms: Terms) -> Fraction:
            total = Fraction(0)
            for exp, coeff in terms.items():
                term = coeff
                for val, e in zip(values, exp):
                    if e:
                        term *= val ** e
                total += term
            return total

        den = ev(self.den)
        if den == 0:
            raise PoleError(f"pole at {dict(point)}")
        return ev(self.num) / den

    def evaluate_float(self, point: Mapping[str, float]) -> float:
        values = [float(point[v]) for v in self.vars]

        def ev(terms: Terms) -> float:
            total = 0.0
            for exp, coeff in terms.items():
                term = float(coeff)
                for val, e in zip(values, exp):
                    if e:
                        term *= val ** e
                total += term
            return total

        den = ev(self.den)
        if den == 0.0:
            raise PoleError(f"pole at {dict(point)}")
        return ev(self.num) / den

    # -- printing --------------------------------------------------------

    def _terms_text(self, terms: Terms) -> str:
        if not terms:
            return "0"
        parts = []
        for exp in sorted(terms, key=_grlex_key, reverse=True):
            coeff = terms[exp]
            factors = []
            for name, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if coeff == 1 and factors:
                pass
            elif coeff == -1 and factors:
                factors[0] = "-" + factors[0]
            elif coeff.denominator == 1:
                factors.insert(0, str(coeff.numerator))
            else:
                factors.insert(0, f"({coeff.numerator}/{coeff.denominator})")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        num = self._terms_text(self.num)
        if self.den == {(0,) * len(self.vars): Fraction(1)}:
            return f"({num})"
        return f"({num})/({self._terms_text(self.den)})"

    def __repr__(self) -> str:
        return f"ScalarExpr({self})"


# -- parser ---------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _OPS:
            tokens.append((ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append((("int", text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((("name", text[i:j]), i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: Tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, symbol: str):
        tok, at = self.next()
        if tok != symbol:
            raise ParseError(f"expected {symbol!r}", at)

    def parse(self) -> ScalarExpr:
        expr = self.expr()
        tok, at = self.next()
        if tok != "end":
            raise ParseError("trailing input", at)
        return expr

    def expr(self) -> ScalarExpr:
        value = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ScalarExpr:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op, at = self.next()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by the zero expression", at)
                value = value / rhs
        return value

    def factor(self) -> ScalarExpr:
        negate = False
        while self.peek() == "-":
            self.next()
            negate = not negate
        value = self.atom()
        if self.peek() == "^":
            _, at = self.next()
            tok, eat = self.next()
            if not (isinstance(tok, tuple) and tok[0] == "int"):
                raise ParseError("exponent must be a nonnegative integer", eat)
            value = value ** int(tok[1])
        return -value if negate else value

    def atom(self) -> ScalarExpr:
        tok, at = self.next()
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        if isinstance(tok, tuple):
            kind, text = tok
            if kind == "int":
                return ScalarExpr.constant(int(text), self.vars)
            if text not in self.vars:
                raise ParseError(f"unknown variable {text!r}", at)
            return ScalarExpr.variable(text, self.vars)
        raise ParseError("expected a value", at)


def parse_expr(text: str, vars: Iterable[str]) -> ScalarExpr:
    """Parse expression text over the declared coordinate names."""
    return _Parser(text, tuple(vars)).parse()
