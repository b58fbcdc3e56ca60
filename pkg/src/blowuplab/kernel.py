"""Exact arithmetic kernel: monomials, sparse rational polynomials, monomial orders.

Monomials are plain tuples of non-negative ints (one exponent per ring
variable).  Polynomials are immutable sparse maps monomial -> Fraction with no
zero coefficients stored.  Coefficients are always exact rationals: the theory
implemented downstream requires an infinite coefficient field, and exact
arithmetic makes every result reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent vector of x^a / x^b (requires b | a)."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


class MonomialOrder:
    """A total multiplicative well-order on exponent tuples.

    kind is one of "degrevlex", "lex", or "elim" (elimination order whose
    first `block` variables dominate; degrevlex inside each block).
    """

    __slots__ = ("kind", "block")

    def __init__(self, kind, block=0):
        if kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "elim" and block < 1:
            raise ValueError("elimination order needs a positive block size")
        self.kind = kind
        self.block = block

    def key(self, e):
        """Sort key: bigger key = bigger monomial."""
        if self.kind == "lex":
            return e
        if self.kind == "degrevlex":
            return (sum(e), tuple(-x for x in reversed(e)))
        head, tail = e[: self.block], e[self.block :]
        return (
            sum(head),
            tuple(-x for x in reversed(head)),
            sum(tail),
            tuple(-x for x in reversed(tail)),
        )

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder('elim', block={self.block})"
        return f"MonomialOrder({self.kind!r})"


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination_order(block):
    return MonomialOrder("elim", block)


def order_compare(a, b, order=DEGREVLEX):
    """Compare exponent tuples; returns -1, 0 or 1."""
    if len(a) != len(b):
        raise ValueError("exponent tuples of different lengths")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Sparse multivariate polynomial over the rationals.

    Immutable; `terms` maps exponent tuple -> nonzero Fraction.  All arithmetic
    is exact.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms, nvars):
        clean = {}
        for m, c in terms.items():
            if len(m) != nvars:
                raise ValueError("monomial length does not match variable count")
            c = Fraction(c)
            if c:
                clean[m] = c
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls({}, nvars)

    @classmethod
    def constant(cls, c, nvars):
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    @classmethod
    def monomial(cls, expo, nvars, coeff=1):
        return cls({tuple(expo): Fraction(coeff)}, nvars)

    @classmethod
    def variable(cls, i, nvars, power=1):
        e = [0] * nvars
        e[i] = power
        return cls({tuple(e): Fraction(1)}, nvars)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        """Single term (any coefficient)."""
        return len(self.terms) == 1

    def is_constant(self):
        return all(mono_deg(m) == 0 for m in self.terms)

    def total_degree(self):
        return max((mono_deg(m) for m in self.terms), default=-1)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable sets")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(terms, self.nvars)

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial(terms, self.nvars)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial({m: q * c for m, q in self.terms.items()}, self.nvars)

    def mul_monomial(self, expo, coeff=1):
        coeff = Fraction(coeff)
        if not coeff:
            return Polynomial.zero(self.nvars)
        return Polynomial(
            {mono_mul(m, expo): c * coeff for m, c in self.terms.items()},
            self.nvars,
        )

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- leading data --------------------------------------------------------

    def leading_monomial(self, order=DEGREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order=DEGREVLEX):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order=DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- structure -----------------------------------------------------------

    def support_vars(self):
        """Indices of variables that actually occur."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def extend(self, nvars, shift=0):
        """Re-embed into a larger variable set, placing old var i at i+shift."""
        terms = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            for i, x in enumerate(m):
                e[i + shift] = x
            terms[tuple(e)] = c
        return Polynomial(terms, nvars)

    def substitute(self, images):
        """Evaluate at polynomials: variable i -> images[i]."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars if images else 0
        out = Polynomial.zero(nv)
        for m, c in self.terms.items():
            part = Polynomial.constant(c, nv)
            for i, e in enumerate(m):
                if e:
                    part = part * images[i] ** e
            out = out + part
        return out

    # -- equality / hashing ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        names = tuple(f"x{i}" for i in range(self.nvars))
        return f"Polynomial({poly_str(self, names)})"


def poly_str(f, names, order=DEGREVLEX):
    """Render with terms in decreasing order, e.g. 'x^3 + y^5 + z^2'."""
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.sorted_terms(order):
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        body = "*".join(factors)
        if not body:
            piece = str(abs(c))
        elif abs(c) == 1:
            piece = body
        else:
            piece = f"{abs(c)}*{body}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, piece))
    first_sign, first_piece = parts[0]
    out = ("-" if first_sign == "-" else "") + first_piece
    for sign, piece in parts[1:]:
        out += f" {sign} {piece}"
    return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = None


def _tokens(text):
    import re
    global _TOKEN_RE
    if _TOKEN_RE is None:
        _TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-)")
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ValueError(f"bad character in polynomial at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_polynomial(text, names):
    """Parse e.g. 'x^6 - 2*x^4*y^2 + y^6' (the * between factors is optional).

    Coefficients are integers; variables must be in `names`.
    """
    names = tuple(names)
    index = {n: i for i, n in enumerate(names)}
    nvars = len(names)
    toks = _tokens(text)
    if not toks:
        raise ValueError("empty polynomial")
    pos = 0
    terms = {}

    def take_exponent():
        nonlocal pos
        if pos < len(toks) and toks[pos] == "^":
            pos += 1
            if pos >= len(toks) or not toks[pos].isdigit():
                raise ValueError("exponent expected after '^'")
            e = int(toks[pos])
            pos += 1
            return e
        return 1

    while pos < len(toks):
        sign = 1
        while pos < len(toks) and toks[pos] in "+-":
            if toks[pos] == "-":
                sign = -sign
            pos += 1
        if pos >= len(toks):
            raise ValueError("dangling sign")
        coeff = Fraction(sign)
        expo = [0] * nvars
        saw_factor = False
        while pos < len(toks) and toks[pos] not in "+-":
            tok = toks[pos]
            if tok == "*":
                pos += 1
                continue
            pos += 1
            if tok.isdigit():
                e = take_exponent()
                coeff *= Fraction(int(tok)) ** e
            elif tok in index:
                expo[index[tok]] += take_exponent()
            else:
                raise ValueError(f"unknown variable {tok!r}")
            saw_factor = True
        if not saw_factor:
            raise ValueError("empty term")
        key = tuple(expo)
        s = terms.get(key, 0) + coeff
        if s:
            terms[key] = s
        else:
            terms.pop(key, None)
    return Polynomial(terms, nvars)


# ---------------------------------------------------------------------------
# integer content helpers (used by the Groebner engine)
# ---------------------------------------------------------------------------

def clear_denominators(f):
    """Return integer-coefficient term dict proportional to f (content 1).

    The sign is normalized so the coefficient of the degrevlex-leading
    monomial is positive.  Returns ({}, 1) for 0.
    """
    if f.is_zero():
        return {}, Fraction(1)
    denom = 1
    for c in f.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = {m: int(c * denom) for m, c in f.terms.items()}
    content = 0
    for v in ints.values():
        content = gcd(content, v)
    lead = max(ints, key=DEGREVLEX.key)
    if ints[lead] < 0:
        content = -content
    scaled = {m: v // content for m, v in ints.items()}
    # f * (denom/content) = scaled
    return scaled, Fraction(denom, content)


# ---------------------------------------------------------------------------
# extended binomial coefficients
# ---------------------------------------------------------------------------

def binomial_poly(a, k):
    """C(a, k) = a(a-1)...(a-k+1)/k! as an exact rational, for any integer
    (or rational) a and natural k.

    This is the polynomial extension used to evaluate Hilbert-Samuel
    polynomials at arbitrary integers, including negative ones.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    num = Fraction(1)
    for i in range(k):
        num *= Fraction(a) - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return num / den
