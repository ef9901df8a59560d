"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are kept as ``int`` when integral and as ``fractions.Fraction``
otherwise, so integer-coefficient work (the common case here) avoids the
overhead of ``Fraction`` arithmetic. Terms are keyed by exponent tuples aligned
with an ordered tuple of variable names; operations between polynomials over
different variable tuples align them first (union, first operand's order
winning).
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = ["MultiPoly", "to_rational", "rational_str", "parse", "symbols"]


def to_rational(value):
    """Convert ``value`` to an exact rational (``int`` when integral).

    Accepts ints, Fractions, other ``numbers.Rational`` values, floats (taken
    at their exact binary value) and strings such as ``"3/4"`` or ``"0.54"``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        value = Fraction(value.strip())
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, _RationalABC):
        value = Fraction(value.numerator, value.denominator)
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def rational_str(value) -> str:
    """Render a rational as ``"p"`` or ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _reindex(terms, old_vars, new_vars):
    if old_vars == new_vars:
        return terms
    pos = [new_vars.index(v) for v in old_vars]
    n = len(new_vars)
    out = {}
    for exps, c in terms.items():
        e = [0] * n
        for i, k in enumerate(exps):
            e[pos[i]] = k
        out[tuple(e)] = c
    return out


class MultiPoly:
    """An immutable multivariate polynomial over the rationals."""

    __slots__ = ("_vars", "_terms", "_key")

    def __init__(self, terms=None, variables=()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        cleaned = {}
        n = len(variables)
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match {variables}")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = to_rational(c)
            if c:
                c = _norm(cleaned.get(exps, 0) + c)
                if c:
                    cleaned[exps] = c
                else:
                    cleaned.pop(exps, None)
        self._vars = variables
        self._terms = cleaned
        self._key = None

    @classmethod
    def _raw(cls, variables, terms):
        obj = object.__new__(cls)
        obj._vars = variables
        obj._terms = terms
        obj._key = None
        return obj

    # ------------------------------------------------------------ constructors
    @classmethod
    def var(cls, name: str, variables=None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            variables = variables + (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {e: 1})

    @classmethod
    def const(cls, value, variables=()) -> "MultiPoly":
        variables = tuple(variables)
        c = to_rational(value)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def from_coefficients(cls, coeffs, var: str, variables=None) -> "MultiPoly":
        """Build ``sum(coeffs[i] * var**i)``; entries may be numbers or polys."""
        x = cls.var(var, variables)
        acc = cls.const(0, x._vars)
        for c in reversed(list(coeffs)):
            acc = acc * x + c
        return acc

    @classmethod
    def from_dense(cls, coeffs, var: str) -> "MultiPoly":
        return cls._raw((var,), {(i,): _norm(to_rational(c)) for i, c in enumerate(coeffs) if c})

    # ------------------------------------------------------------ inspection
    @property
    def variables(self) -> tuple:
        return self._vars

    def free_variables(self) -> tuple:
        """Variables that actually occur, in declared order."""
        used = [False] * len(self._vars)
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self._vars, used) if u)

    def items(self):
        """``(exponent tuple, coefficient)`` pairs in graded-lex order, leading first."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def nterms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def _index(self, var):
        try:
            return self._vars.index(var)
        except ValueError:
            return None

    def degree(self, var=None) -> int:
        """Total degree, or degree in ``var``; ``-1`` for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = self._index(var)
        if i is None:
            return 0
        return max(e[i] for e in self._terms)

    def leading_term(self):
        """Graded-lex leading ``(exponents, coefficient)``."""
        return max(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def coefficients_in(self, var: str) -> list:
        """Coefficients ``[c0, c1, ...]`` of powers of ``var`` (each free of ``var``)."""
        i = self._index(var)
        if i is None:
            return [self]
        buckets = {}
        for exps, c in self._terms.items():
            k = exps[i]
            e = exps[:i] + (0,) + exps[i + 1:]
            buckets.setdefault(k, {})[e] = c
        n = max(buckets) if buckets else 0
        return [MultiPoly._raw(self._vars, buckets.get(k, {})) for k in range(n + 1)]

    def leading_coeff(self, var: str) -> "MultiPoly":
        return self.coefficients_in(var)[-1]

    def to_dense(self, var: str | None = None) -> list:
        """Ascending rational coefficients of a polynomial in at most one variable."""
        free = self.free_variables()
        if var is None:
            if len(free) > 1:
                raise ValueError(f"polynomial is not univariate: {free}")
            var = free[0] if free else (self._vars[0] if self._vars else None)
        elif any(v != var for v in free):
            raise ValueError(f"polynomial involves {free}, not only {var}")
        if not self._terms:
            return []
        i = self._index(var)
        if i is None:
            return [self.constant_value()]
        n = self.degree(var)
        out = [0] * (n + 1)
        for exps, c in self._terms.items():
            out[exps[i]] = c
        return out

    # ------------------------------------------------------------ alignment
    def with_variables(self, variables) -> "MultiPoly":
        """Re-express over ``variables`` (must contain every free variable)."""
        variables = tuple(variables)
        missing = [v for v in self.free_variables() if v not in variables]
        if missing:
            raise ValueError(f"variables {missing} would be dropped")
        keep = [self._vars.index(v) if v in self._vars else None for v in variables]
        out = {}
        for exps, c in self._terms.items():
            out[tuple(exps[k] if k is not None else 0 for k in keep)] = c
        return MultiPoly._raw(variables, out)

    def _align(self, other):
        if self._vars == other._vars:
            return self._vars, self._terms, other._terms
        merged = self._vars + tuple(v for v in other._vars if v not in self._vars)
        return (merged, _reindex(self._terms, self._vars, merged),
                _reindex(other._terms, other._vars, merged))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        try:
            c = to_rational(other)
        except TypeError:
            return None
        return MultiPoly._raw(self._vars, {(0,) * len(self._vars): c} if c else {})

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vars_, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = _norm(v + c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(vars_, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = to_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPoly._raw(self._vars, {})
            return MultiPoly._raw(self._vars, {e: _norm(v * c) for e, v in self._terms.items()})
        vars_, a, b = self._align(other)
        out = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw(vars_, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        inv = Fraction(1) / c
        return self * inv

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly._raw(self._vars, {(0,) * len(self._vars): 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divide_exact(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        vars_, a, b = self._align(other)
        lt_e, lt_c = max(b.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        rem = dict(a)
        quot = {}
        while rem:
            e, c = max(rem.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            shift = tuple(x - y for x, y in zip(e, lt_e))
            if any(k < 0 for k in shift):
                raise ArithmeticError("division is not exact")
            if isinstance(c, int) and isinstance(lt_c, int) and c % lt_c == 0:
                q = c // lt_c
            else:
                q = _norm(Fraction(c) / lt_c)
            quot[shift] = q
            for eb, cb in b.items():
                k = tuple(x + y for x, y in zip(shift, eb))
                v = _norm(rem.get(k, 0) - q * cb)
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MultiPoly._raw(vars_, quot)

    # ------------------------------------------------------------ calculus and substitution
    def diff(self, var: str) -> "MultiPoly":
        i = self._index(var)
        if i is None:
            return MultiPoly._raw(self._vars, {})
        out = {}
        for exps, c in self._terms.items():
            k = exps[i]
            if k:
                out[exps[:i] + (k - 1,) + exps[i + 1:]] = _norm(c * k)
        return MultiPoly._raw(self._vars, out)

    def subs(self, mapping: dict) -> "MultiPoly":
        """Substitute numbers or polynomials for variables."""
        mapping = {v: val for v, val in mapping.items() if v in self._vars}
        if not mapping:
            return self
        keep = tuple(v for v in self._vars if v not in mapping)
        keep_idx = [self._vars.index(v) for v in keep]
        sub_idx = [(self._vars.index(v), val) for v, val in mapping.items()]
        power_cache = {}

        def power(i, val, k):
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = val ** k if k else 1
            return power_cache[key]

        numeric = {}
        poly_acc = MultiPoly._raw(keep, {})
        has_poly = any(isinstance(val, MultiPoly) for _, val in sub_idx)
        if not has_poly:
            sub_idx = [(i, to_rational(val)) for i, val in sub_idx]
        for exps, c in self._terms.items():
            factor = c
            for i, val in sub_idx:
                if exps[i]:
                    factor = factor * power(i, val, exps[i])
            base = tuple(exps[k] for k in keep_idx)
            if has_poly:
                mono = MultiPoly._raw(keep, {base: 1})
                poly_acc = poly_acc + mono * factor
            else:
                numeric[base] = numeric.get(base, 0) + factor
        if has_poly:
            return poly_acc
        return MultiPoly._raw(keep, {e: _norm(c) for e, c in numeric.items() if c})

    def evaluate(self, point: dict):
        """Exact value at a point assigning every free variable."""
        missing = [v for v in self.free_variables() if v not in point]
        if missing:
            raise ValueError(f"no value given for {missing}")
        vals = [to_rational(point[v]) if v in point else 0 for v in self._vars]
        total = 0
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term = term * v ** e
            total += term
        return _norm(Fraction(total)) if not isinstance(total, int) else total

    def evaluate_float(self, point: dict) -> float:
        vals = [float(point.get(v, 0.0)) for v in self._vars]
        total = 0.0
        for exps, c in self._terms.items():
            term = float(c)
            for v, e in zip(vals, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def rename(self, mapping: dict) -> "MultiPoly":
        return MultiPoly._raw(tuple(mapping.get(v, v) for v in self._vars), dict(self._terms))

    # ------------------------------------------------------------ content
    def integer_scale(self):
        """Return ``(scale, poly)`` with integer coefficients and positive ``scale``
        such that ``poly == scale * self``."""
        den = 1
        for c in self._terms.values():
            if type(c) is Fraction:
                d = c.denominator
                den = den * d // _gcd(den, d)
        return den, self * den

    def primitive(self) -> "MultiPoly":
        """Positive rational multiple with coprime integer coefficients."""
        if not self._terms:
            return self
        _, p = self.integer_scale()
        g = 0
        for c in p._terms.values():
            g = _gcd(g, c)
        return MultiPoly._raw(p._vars, {e: c // g for e, c in p._terms.items()})

    # ------------------------------------------------------------ equality and display
    def _canonical(self):
        if self._key is None:
            names = self._vars
            items = []
            for exps, c in self._terms.items():
                mono = tuple(sorted((names[i], e) for i, e in enumerate(exps) if e))
                items.append((mono, Fraction(c)))
            self._key = frozenset(items)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
            if other is None:
                return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, variables={self._vars!r})"

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def to_json_obj(self) -> dict:
        return {
            "variables": list(self._vars),
            "terms": [[list(e), rational_str(c)] for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "MultiPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({tuple(e): c for e, c in data["terms"]}, data["variables"])


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def symbols(names: str, variables=None):
    """``symbols("K b")`` returns one polynomial per name over a shared variable tuple."""
    names = tuple(names.replace(",", " ").split())
    variables = tuple(variables) if variables is not None else names
    return tuple(MultiPoly.var(n, variables) for n in names)


# ---------------------------------------------------------------- text grammar
def format_poly(p: MultiPoly) -> str:
    """Render as e.g. ``6*K^2*b^3 - K*b^4 + 3/4``; graded-lex order, leading term first."""
    if p.is_zero():
        return "0"
    parts = []
    for idx, (exps, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(p.variables, exps) if e)
        if not mono:
            body = rational_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{rational_str(mag)}*{mono}"
        if idx == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, variables):
        self.toks = tokens
        self.i = 0
        self.vars = list(variables)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r}, found {val!r}")

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise ValueError("division is only allowed by constants")
                acc = acc / rhs.constant_value()
        return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            wrapped = self.peek() == ("op", "(")
            if wrapped:
                self.take()
            kind, val = self.take()
            if wrapped:
                self.expect(")")
            if kind != "num" or not val.isdigit():
                raise ValueError("exponents must be non-negative integer literals")
            base = base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.const(Fraction(val))
        if kind == "var":
            if val not in self.vars:
                self.vars.append(val)
            return MultiPoly.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def parse(text: str, variables=None) -> MultiPoly:
    """Parse the expression grammar: rationals, named variables, ``+ - * /``,
    ``^`` (or ``**``) with integer literal exponents, parentheses.

    Variables are ordered as given, then by first appearance.
    """
    parser = _Parser(_tokenize(text), variables or ())
    if not parser.toks:
        raise ValueError("empty expression")
    result = parser.expr()
    if parser.i != len(parser.toks):
        raise ValueError(f"trailing input at token {parser.i} in {text!r}")
    return result.with_variables(tuple(parser.vars))
