"""Sparse multivariate polynomials with rational coefficients.

Exponent vectors are packed into a single integer: a 32-bit field for the
total degree followed by one 32-bit field per variable.  Comparing packed
keys as integers is then exactly graded lexicographic order, and monomial
multiplication is integer addition.
"""

import heapq
import re
from functools import lru_cache

import gmpy2

from .rat import Rat, rat

_W = 32
_MASK = (1 << _W) - 1
_GUARD_BIT = 1 << (_W - 1)


class NotExactError(ArithmeticError):
    """Raised when a polynomial division leaves a remainder."""


@lru_cache(maxsize=None)
def _guard(n):
    g = 0
    for i in range(n + 1):
        g |= _GUARD_BIT << (_W * i)
    return g


def _pack(exps):
    key = sum(exps)
    for e in exps:
        key = (key << _W) | e
    return key


def _unpack(key, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & _MASK
        key >>= _W
    return tuple(out)


def _divides(k_small, k_big, n):
    g = _guard(n)
    return (((k_big | g) - k_small) & g) == g


def _coef(c):
    if isinstance(c, Rat):
        return c
    return rat(c)


def _check_vars(vars):
    vars = tuple(vars)
    if len(set(vars)) != len(vars):
        raise ValueError(f"duplicate variable names in {vars}")
    return vars


class MPoly:
    """Polynomial over Q in an explicit, ordered list of variables."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = _check_vars(vars)
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, d, vars):
        vars = _check_vars(vars)
        n = len(vars)
        terms = {}
        for exps, c in d.items():
            if isinstance(exps, int):
                exps = (exps,)
            if len(exps) != n:
                raise ValueError("exponent vector length does not match variables")
            c = _coef(c)
            if c:
                k = _pack(exps)
                s = terms.get(k, 0) + c
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return cls(vars, terms)

    @classmethod
    def const(cls, c, vars):
        c = _coef(c)
        return cls(vars, {0: c} if c else {})

    @classmethod
    def gen(cls, name, vars):
        vars = _check_vars(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"unknown variable {name!r}")
        return cls(vars, {_pack(exps): rat(1)})

    @classmethod
    def gens(cls, vars):
        return tuple(cls.gen(v, vars) for v in vars)

    @classmethod
    def from_univariate(cls, coeffs, var, vars=None):
        """Build from a dense coefficient list, lowest degree first."""
        vars = _check_vars(vars or (var,))
        i = vars.index(var)
        d = {}
        for p, c in enumerate(coeffs):
            if c:
                e = [0] * len(vars)
                e[i] = p
                d[tuple(e)] = c
        return cls.from_dict(d, vars)

    # -- basic access -------------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def items(self):
        """(exponents, coefficient) pairs in decreasing graded-lex order."""
        n = len(self.vars)
        for k in sorted(self.terms, reverse=True):
            yield _unpack(k, n), self.terms[k]

    def to_dict(self):
        return dict(self.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, rat(0))

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self.terms)
        return _unpack(k, len(self.vars)), self.terms[k]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def degree(self, var=None):
        """Total degree, or degree in ``var``.  The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(self.terms) >> (_W * len(self.vars))
        i = self.vars.index(var)
        shift = _W * (len(self.vars) - 1 - i)
        return max((k >> shift) & _MASK for k in self.terms)

    def variables_used(self):
        n = len(self.vars)
        used = set()
        for k in self.terms:
            for v, e in zip(self.vars, _unpack(k, n)):
                if e:
                    used.add(v)
        return [v for v in self.vars if v in used]

    # -- coercion -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Rat)) or type(other).__name__ == "Fraction":
            return MPoly.const(other, self.vars)
        return None

    def with_vars(self, vars):
        """Re-express over another variable list containing all used variables."""
        vars = _check_vars(vars)
        if vars == self.vars:
            return self
        n = len(self.vars)
        idx = []
        for v in self.vars:
            idx.append(vars.index(v) if v in vars else None)
        terms = {}
        m = len(vars)
        for k, c in self.terms.items():
            e = _unpack(k, n)
            new = [0] * m
            for j, x in enumerate(e):
                if x:
                    if idx[j] is None:
                        raise ValueError(f"variable {self.vars[j]!r} is used but not in {vars}")
                    new[idx[j]] = x
            terms[_pack(new)] = c
        return MPoly(vars, terms)

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return MPoly(self.vars, {k: -c for k, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        terms = dict(a)
        for k, c in b.items():
            s = terms.get(k)
            if s is None:
                terms[k] = c
            else:
                s = s + c
                if s:
                    terms[k] = s
                else:
                    del terms[k]
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def _scale(self, c):
        c = _coef(c)
        if not c:
            return MPoly(self.vars, {})
        return MPoly(self.vars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rat)):
            return self._scale(other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        terms = {}
        get = terms.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                terms[k] = get(k, 0) + ca * cb
        return MPoly(self.vars, {k: c for k, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Rat)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return self._scale(1 / rat(other))
        if isinstance(other, MPoly):
            if other.is_constant():
                return self / other.constant_value()
            return self.exact_div(other)
        return NotImplemented

    def divmod(self, other):
        """Graded-lex division with remainder: ``self = q*other + r``."""
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("division by the zero polynomial")
        n = len(self.vars)
        lk = max(o.terms)
        lc = o.terms[lk]
        rem = dict(self.terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        q, r = {}, {}
        okterms = [(k, c) for k, c in o.terms.items() if k != lk]
        while heap:
            k = -heapq.heappop(heap)
            c = rem.pop(k, None)
            if not c:
                continue
            while heap and -heap[0] == k:
                heapq.heappop(heap)
            if _divides(lk, k, n):
                qk = k - lk
                qc = c / lc
                q[qk] = qc
                for ok, oc in okterms:
                    nk = qk + ok
                    nc = rem.get(nk, 0) - qc * oc
                    if nc:
                        if nk not in rem:
                            heapq.heappush(heap, -nk)
                        rem[nk] = nc
                    else:
                        rem.pop(nk, None)
            else:
                r[k] = c
        return MPoly(self.vars, q), MPoly(self.vars, r)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise NotExactError("polynomial division is not exact")
        return q

    def divides(self, other):
        """True if ``self`` divides ``other`` exactly."""
        return not other.divmod(self)[1]

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Rat)) or type(other).__name__ == "Fraction":
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.terms.get(0, 0))
            else:
                self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------
    def diff(self, var):
        n = len(self.vars)
        i = self.vars.index(var)
        shift = _W * (n - 1 - i)
        unit = (1 << shift) + (1 << (_W * n))
        terms = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _MASK
            if e:
                terms[k - unit] = c * e
        return MPoly(self.vars, terms)

    def evaluate(self, point):
        """Evaluate at a mapping or sequence of scalars (any ring of scalars)."""
        n = len(self.vars)
        if isinstance(point, dict):
            vals = [point[v] for v in self.vars]
        else:
            vals = list(point)
            if len(vals) != n:
                raise ValueError("point has the wrong number of coordinates")
        powers = [dict() for _ in range(n)]
        total = None
        for k, c in self.terms.items():
            e = _unpack(k, n)
            term = c
            for i, x in enumerate(e):
                if x:
                    p = powers[i].get(x)
                    if p is None:
                        p = vals[i] ** x
                        powers[i][x] = p
                    term = p * term
            total = term if total is None else total + term
        if total is None:
            return vals[0] * 0 if vals else rat(0)
        return total

    __call__ = evaluate

    def subs(self, mapping):
        """Substitute rationals or polynomials (over the same variables) for variables."""
        n = len(self.vars)
        vals = []
        for v in self.vars:
            if v in mapping:
                x = mapping[v]
                vals.append(x if isinstance(x, MPoly) else MPoly.const(x, self.vars))
            else:
                vals.append(MPoly.gen(v, self.vars))
        powers = [dict() for _ in range(n)]
        acc = MPoly(self.vars, {})
        for k, c in self.terms.items():
            e = _unpack(k, n)
            term = MPoly.const(c, self.vars)
            for i, x in enumerate(e):
                if x:
                    p = powers[i].get(x)
                    if p is None:
                        p = vals[i] ** x
                        powers[i][x] = p
                    term = term * p
            acc = acc + term
        return acc

    def substitute(self, var, num, den):
        """Return ``(q, k)`` with ``q = den**k * self(var := num/den)``, ``k = deg_var``."""
        num = self._lift(num)
        den = self._lift(den)
        if not den:
            raise ZeroDivisionError("substitution denominator is zero")
        cs = self.coeffs_in(var)
        k = len(cs) - 1
        if k < 0:
            return MPoly(self.vars, {}), 0
        num_p = [MPoly.const(1, self.vars)]
        den_p = [MPoly.const(1, self.vars)]
        for _ in range(k):
            num_p.append(num_p[-1] * num)
            den_p.append(den_p[-1] * den)
        q = MPoly(self.vars, {})
        for j, c in enumerate(cs):
            if c:
                q = q + c * num_p[j] * den_p[k - j]
        return q, k

    def coeffs_in(self, var):
        """Coefficients as polynomials in the other variables, lowest power first."""
        n = len(self.vars)
        i = self.vars.index(var)
        shift = _W * (n - 1 - i)
        top = _W * n
        buckets = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _MASK
            nk = k - (e << shift) - (e << top)
            buckets.setdefault(e, {})[nk] = c
        if not buckets:
            return []
        return [MPoly(self.vars, buckets.get(j, {})) for j in range(max(buckets) + 1)]

    def deflate(self, var, k):
        """Replace ``var**(k*j)`` by ``var**j``; every exponent of var must be divisible by k."""
        i = self.vars.index(var)
        d = {}
        for e, c in self.items():
            if e[i] % k:
                raise ValueError(f"exponent {e[i]} of {var} is not divisible by {k}")
            e = list(e)
            e[i] //= k
            d[tuple(e)] = c
        return MPoly.from_dict(d, self.vars)

    def to_univariate(self, var=None):
        """Dense list of rational coefficients, lowest degree first."""
        if var is None:
            used = self.variables_used()
            if len(used) > 1:
                raise ValueError(f"polynomial is not univariate: uses {used}")
            var = used[0] if used else self.vars[0]
        out = []
        for c in self.coeffs_in(var):
            out.append(c.constant_value() if c else rat(0))
        return out

    # -- content and normalization -----------------------------------------
    def content(self):
        """Positive rational ``c`` with ``self/c`` having coprime integer coefficients."""
        if not self.terms:
            return rat(0)
        g = gmpy2.mpz(0)
        l = gmpy2.mpz(1)
        for c in self.terms.values():
            g = gmpy2.gcd(g, c.numerator)
            l = gmpy2.lcm(l, c.denominator)
        return gmpy2.mpq(g, l)

    def primitive(self):
        """Split as ``(scalar, primitive part)`` with positive graded-lex leading coefficient."""
        if not self.terms:
            return rat(0), self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return c, self / c

    def normalized(self):
        return self.primitive()[1]

    def monic(self):
        return self / self.leading_coefficient()

    def proportional_to(self, other):
        """Return ``q`` with ``self == q*other`` for a rational q, or None."""
        if not self or not other:
            return rat(0) if not self and not other else None
        if len(self.terms) != len(other.terms):
            return None
        k = max(self.terms)
        if k not in other.terms:
            return None
        q = self.terms[k] / other.terms[k]
        for key, c in other.terms.items():
            if self.terms.get(key) != q * c:
                return None
        return q

    # -- gcd ----------------------------------------------------------------
    def gcd(self, other):
        o = self._lift(other)
        if not self:
            return o.normalized()
        if not o:
            return self.normalized()
        if self.is_constant() or o.is_constant():
            return MPoly.const(1, self.vars)
        R = _sympy_ring(self.vars)
        g = _to_sympy(self, R).gcd(_to_sympy(o, R))
        return _from_sympy(g, self.vars).normalized()

    def lcm(self, other):
        g = self.gcd(other)
        return (self.exact_div(g) * other).normalized()

    # -- display ------------------------------------------------------------
    def __repr__(self):
        return f"MPoly({self.vars}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(self.vars, e) if x)
            a = abs(c)
            cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if mono:
                body = mono if a == 1 else f"{cs}*{mono}"
            else:
                body = cs
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# -- sympy bridge (gcd only) -------------------------------------------------

@lru_cache(maxsize=None)
def _sympy_ring(vars):
    from sympy import QQ
    from sympy.polys.rings import ring
    R, *_ = ring(",".join(vars), QQ)
    return R


def _to_sympy(p, R):
    dom = R.domain
    return R.from_dict({e: dom.convert(int(c.numerator)) / dom.convert(int(c.denominator))
                        for e, c in p.items()})


def _from_sympy(f, vars):
    return MPoly.from_dict({e: rat(int(c.numerator), int(c.denominator)) for e, c in f.items()}, vars)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, vars):
        self.toks = tokens
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        kind, val = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                if not d.is_constant():
                    raise ValueError("division by a non-constant in polynomial literal")
                acc = acc / d.constant_value()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v = self.take()
            sign = 1
            if k == "op" and v == "-":
                raise ValueError("negative exponent in polynomial literal")
            if k == "op" and v == "(":
                k, v = self.take()
                if self.take() != ("op", ")"):
                    raise ValueError("bad exponent")
            if k != "num" or "." in v:
                raise ValueError("exponent must be a non-negative integer")
            return base ** (sign * int(v))
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MPoly.const(rat(val), self.vars)
        if kind == "name":
            if val not in self.vars:
                raise ValueError(f"unknown variable {val!r}; declared {self.vars}")
            return MPoly.gen(val, self.vars)
        if kind == "op" and val == "(":
            e = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return e
        if kind == "op" and val == "-":
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")


def parse(text, vars):
    """Parse a polynomial literal such as ``"2 a^2 b - (1/2)*c"`` over ``vars``."""
    vars = _check_vars(vars)
    p = _Parser(_tokenize(text), vars)
    out = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in polynomial literal: {p.toks[p.i:]}")
    return out


# -- fixture files ------------------------------------------------------------

class FixtureError(ValueError):
    pass


def read_fixtures(text):
    """Parse ``poly NAME`` / ``vars ...`` / ``coef e1 .. en`` / ``end`` blocks."""
    out = {}
    name = vars = None
    terms = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "poly":
            if name is not None:
                raise FixtureError(f"line {lineno}: nested poly block")
            if len(rest) != 1:
                raise FixtureError(f"line {lineno}: expected 'poly NAME'")
            name, vars, terms = rest[0], None, {}
        elif head == "vars":
            if name is None or vars is not None:
                raise FixtureError(f"line {lineno}: misplaced vars line")
            vars = tuple(rest)
        elif head == "end":
            if name is None or vars is None:
                raise FixtureError(f"line {lineno}: 'end' outside a block")
            out[name] = MPoly.from_dict(terms, vars)
            name = None
        else:
            if name is None or vars is None:
                raise FixtureError(f"line {lineno}: term outside a block")
            if len(rest) != len(vars):
                raise FixtureError(f"line {lineno}: expected {len(vars)} exponents")
            try:
                c = rat(head)
                e = tuple(int(x) for x in rest)
            except (ValueError, TypeError) as exc:
                raise FixtureError(f"line {lineno}: {exc}") from None
            if any(x < 0 for x in e):
                raise FixtureError(f"line {lineno}: negative exponent")
            terms[e] = terms.get(e, 0) + c
    if name is not None:
        raise FixtureError(f"unterminated block {name!r}")
    return out


def write_fixture(name, p, comment=None):
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"poly {name}")
    lines.append("vars " + " ".join(p.vars))
    for e, c in p.items():
        cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        lines.append(cs + " " + " ".join(str(x) for x in e))
    lines.append("end")
    return "\n".join(lines) + "\n"
