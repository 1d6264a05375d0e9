"""Words, cyclic classes, exact parameters and rate polynomials.

A word is a tuple of ints over {0, 1, 2}.  Positions are 0-based everywhere in
code; docstrings that talk about "site 1" mean index 0.
"""
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial


class InvalidWord(ValueError):
    pass


class InvalidParams(ValueError):
    pass


def as_word(w):
    """Accept '12020', [1, 2, 0, 2, 0] or a tuple; return a validated tuple."""
    if isinstance(w, str):
        try:
            w = [int(c) for c in w.strip()]
        except ValueError:
            raise InvalidWord(f"bad symbol in {w!r}")
    w = tuple(w)
    if not w:
        raise InvalidWord("empty word")
    if any(c not in (0, 1, 2) for c in w):
        raise InvalidWord(f"symbols must be 0, 1 or 2: {w}")
    return w


def word_str(w):
    return "".join(str(c) for c in w)


@dataclass(frozen=True)
class SizeTriple:
    k: int  # number of 2s
    r: int  # number of 1s
    l: int  # number of 0s

    def __post_init__(self):
        if min(self.k, self.r, self.l) < 0:
            raise InvalidParams("negative species count")

    @property
    def n(self):
        return self.k + self.r + self.l


def classify(word):
    w = as_word(word)
    return SizeTriple(w.count(2), w.count(1), w.count(0))


def rotate(w, s):
    s %= len(w)
    return w[s:] + w[:s]


@dataclass(frozen=True)
class CyclicClass:
    representative: tuple
    order: int


def cyclic_class(word):
    w = as_word(word)
    rots = {rotate(w, s) for s in range(len(w))}
    return CyclicClass(min(rots), len(rots))


def rotate_to_one(w):
    """Smallest shift s such that rotate(w, s) starts with a 1."""
    return w.index(1)


def multinomial(*parts):
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def enumerate_words(size):
    letters = [2] * size.k + [1] * size.r + [0] * size.l
    # distinct permutations in lexicographic order, without the n! blowup
    out = []

    def rec(prefix, counts):
        if not any(counts.values()):
            out.append(tuple(prefix))
            return
        for c in (0, 1, 2):
            if counts[c]:
                counts[c] -= 1
                prefix.append(c)
                rec(prefix, counts)
                prefix.pop()
                counts[c] += 1

    rec([], {c: letters.count(c) for c in (0, 1, 2)})
    return out


def enumerate_states(size):
    """All words of the given size and the list of their cyclic classes."""
    words = enumerate_words(size)
    seen = {}
    for w in words:
        c = cyclic_class(w)
        seen[c.representative] = c
    return words, sorted(seen.values(), key=lambda c: c.representative)


def ring_sizes(n, min_r=0):
    for k in range(n + 1):
        for r in range(min_r, n - k + 1):
            yield SizeTriple(k, r, n - k - r)


# ---------------------------------------------------------------- parameters

def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InvalidParams("floats are not accepted; use p/q strings or Fractions")
    return Fraction(x)


@dataclass(frozen=True)
class RateParams:
    t: Fraction = Fraction(1)
    d: Fraction = Fraction(1)
    e: Fraction = Fraction(1)
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("t", "d", "e", "alpha", "beta"):
            v = to_fraction(getattr(self, name))
            if v <= 0:
                raise InvalidParams(f"{name} must be positive, got {v}")
            object.__setattr__(self, name, v)

    def as_dict(self):
        return {k: getattr(self, k) for k in VARS}

    def replace(self, **kw):
        d = self.as_dict()
        d.update(kw)
        return RateParams(**d)


def parse_params(text, base=None):
    """Parse 't=2/3,d=5/7,alpha=1/2' into RateParams."""
    vals = (base or RateParams()).as_dict()
    if text:
        for part in text.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise InvalidParams(f"expected name=value, got {part!r}")
            key, val = part.split("=", 1)
            key = key.strip().lower()
            if key not in vals:
                raise InvalidParams(f"unknown parameter {key!r}")
            try:
                vals[key] = Fraction(val.strip())
            except ValueError:
                raise InvalidParams(f"bad rational {val!r}")
    return RateParams(**vals)


def random_rational(rng, bound=97):
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def random_params(rng, names=("t", "d", "e"), bound=97, **fixed):
    vals = {n: random_rational(rng, bound) for n in names}
    vals.update(fixed)
    return RateParams(**vals)


def make_rng(seed):
    return random.Random(seed)


def frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------ polynomials

VARS = ("t", "d", "e", "alpha", "beta")


class RatePolynomial:
    """Integer-coefficient Laurent polynomial in t, d, e, alpha, beta.

    Stored as {exponent 5-tuple: coefficient}; zero coefficients are dropped.
    Negative exponents are allowed because the enhanced open-boundary weights
    carry non-positive powers of d and e.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(VARS):
                raise ValueError("exponent vector has wrong length")
            if c:
                clean[exp] = clean.get(exp, 0) + int(c)
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls({(0,) * len(VARS): c})

    @classmethod
    def monomial(cls, coeff=1, **powers):
        exp = tuple(powers.get(v, 0) for v in VARS)
        return cls({exp: coeff})

    @classmethod
    def var(cls, name):
        return cls.monomial(**{name: 1})

    def _coerce(self, other):
        if isinstance(other, RatePolynomial):
            return other
        if isinstance(other, int):
            return RatePolynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) + c
        return RatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return RatePolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return RatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1 or abs(next(iter(self.terms.values()))) != 1:
                raise ValueError("only unit monomials have negative powers")
            (exp, c), = self.terms.items()
            return RatePolynomial({tuple(a * k for a in exp): c ** (-k)})
        out = RatePolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def evaluate(self, params):
        vals = params.as_dict() if isinstance(params, RateParams) else params
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = Fraction(c)
            for v, k in zip(VARS, exp):
                if k:
                    term *= Fraction(vals[v]) ** k
            total += term
        return total

    def degree(self, names=("t", "d", "e")):
        """Set of total degrees in the given variables over all terms."""
        idx = [VARS.index(n) for n in names]
        return {sum(exp[i] for i in idx) for exp in self.terms}

    def substitute_one(self, *names):
        """Set the named variables to 1."""
        idx = [VARS.index(n) for n in names]
        out = {}
        for exp, c in self.terms.items():
            e = tuple(0 if i in idx else x for i, x in enumerate(exp))
            out[e] = out.get(e, 0) + c
        return RatePolynomial(out)

    def __repr__(self):
        return f"RatePolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = {"alpha": "a", "beta": "b"}
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            factors = []
            for v, k in zip(VARS, exp):
                if k == 1:
                    factors.append(names.get(v, v))
                elif k:
                    factors.append(f"{names.get(v, v)}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def parse_polynomial(text):
    """Parse a small polynomial like '1+d+2e+d^2+de' (used for fixed tables).

    Grammar: terms separated by +, each an optional integer coefficient
    followed by variables with optional ^power.  Variables: t d e a b.
    """
    names = {"t": "t", "d": "d", "e": "e", "a": "alpha", "b": "beta"}
    out = RatePolynomial()
    for term in text.replace(" ", "").split("+"):
        i = 0
        while i < len(term) and term[i].isdigit():
            i += 1
        coeff = int(term[:i]) if i else 1
        powers = {}
        while i < len(term):
            ch = term[i]
            if ch == "*":
                i += 1
                continue
            if ch not in names:
                raise ValueError(f"bad variable {ch!r} in {text!r}")
            i += 1
            k = 1
            if i < len(term) and term[i] == "^":
                j = i + 1
                while j < len(term) and term[j].isdigit():
                    j += 1
                k = int(term[i + 1:j])
                i = j
            powers[names[ch]] = powers.get(names[ch], 0) + k
        out = out + RatePolynomial.monomial(coeff, **powers)
    return out


def all_binary(n, ones):
    """All 0/1 tuples of length n with the given number of ones."""
    for pos in itertools.combinations(range(n), ones):
        row = [0] * n
        for p in pos:
            row[p] = 1
        yield tuple(row)
