"""Finitely presented Z2-graded algebras over Q(q), with normal forms.

A :class:`Presentation` fixes an ordered list of generators, each even or odd,
and one exchange rule per out-of-order pair: for generators g_j, g_i with
rank(j) > rank(i),

    g_j * g_i  =  lam * g_i * g_j  +  C

with lam a nonzero scalar and C a combination of strictly smaller words.
Odd generators square to zero and are never invertible; invertible even
generators contribute inverse letters g^-1 that annihilate against g.

Elements are finite Q(q)-linear combinations of normal-ordered monomials
g_1^e1 * ... * g_n^en (exponents: odd in {0,1}, invertible even in Z,
plain even in N).  The engine rewrites arbitrary words to this basis by
repeatedly exchanging the leftmost out-of-order adjacent pair; a seeded
random-order variant (:func:`brute_force_nf`) serves as a confluence oracle
in the test suite.  Elements are immutable and safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .qfield import ONE, QRational, ZERO, _coerce

EVEN = 0
ODD = 1

_STEP_CAP = 2_000_000


class AlgebraError(Exception):
    """Base class for algebra-layer errors."""


class PresentationError(AlgebraError):
    """A presentation fails validation (missing rule, bad parity, ...)."""


class AlgebraMismatchError(AlgebraError):
    """Operands belong to different presentations."""


class NonInvertiblePowerError(AlgebraError):
    """Negative exponent requested on a non-invertible generator."""


class UnderivedInverseError(AlgebraError):
    """An inverse-letter exchange was needed but has not been derived."""


class NotQuasiUnitError(AlgebraError):
    """Inversion of an element that is not unit-plus-nilpotent."""


class RewriteLimitError(AlgebraError):
    """Rewriting exceeded the safety step cap (should never happen)."""


@dataclass(frozen=True)
class GeneratorSpec:
    """One generator: a name, a parity, and whether a formal inverse exists.

    Rank is positional: a generator's rank is its index in the presentation's
    generator tuple, and normal order sorts letters by ascending rank.
    """

    name: str
    parity: int
    invertible: bool = False

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise PresentationError(f"bad parity for {self.name!r}")
        if self.parity == ODD and self.invertible:
            raise PresentationError(f"odd generator {self.name!r} cannot be invertible")
        if not self.name.isidentifier():
            raise PresentationError(f"generator name {self.name!r} is not an identifier")


# A letter is (generator index, sign) with sign +1 or -1; a word is a tuple of
# letters.  A monomial is a tuple of (generator index, exponent) pairs with
# strictly increasing indices and nonzero exponents.


def _word_key(word, parities):
    # measure used for the termination assertion: (even length, rank sequence)
    even = sum(1 for g, _ in word if parities[g] == EVEN)
    return (even, tuple(g for g, _ in word))


def _expand(mono):
    out = []
    for g, e in mono:
        s = 1 if e > 0 else -1
        out.extend((g, s) for _ in range(abs(e)))
    return tuple(out)


class Presentation:
    """An ordered, finitely presented Z2-graded algebra over Q(q)."""

    def __init__(self, name, generators, rules, *, derived=False, _validated=False):
        self.name = name
        self.generators = tuple(generators)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self._parities = tuple(g.parity for g in self.generators)
        self._rules = dict(rules)
        # "derived" means every inverse-letter exchange rule is present; it is
        # vacuously true when nothing is invertible.
        self.derived = derived or not any(g.invertible for g in self.generators)
        if not _validated:
            self._validate()
        self._one = Element(self, (((), ONE),))
        self._zero = Element(self, ())

    # -- validation -------------------------------------------------------

    def _validate(self):
        if len(self.index) != len(self.generators):
            raise PresentationError("duplicate generator names")
        n = len(self.generators)
        for key, (lam, corr) in self._rules.items():
            gj, sj, gi, si = key
            if not (0 <= gi < n and 0 <= gj < n):
                raise PresentationError("rule references unknown generator")
            if (sj, si) != (1, 1):
                raise PresentationError(
                    "hand-written rules must relate plain letters; inverse-letter "
                    "rules are derived, not authored"
                )
            if gj <= gi:
                raise PresentationError(
                    f"rule for ({self.generators[gj].name}, {self.generators[gi].name}) "
                    "must have the higher-ranked generator on the left"
                )
            if not isinstance(lam, QRational) or lam.is_zero:
                raise PresentationError("exchange coefficient must be a nonzero scalar")
            pair_parity = (self._parities[gi] + self._parities[gj]) % 2
            lhs_key = _word_key(((gi, 1), (gj, 1)), self._parities)
            for mu, word in corr:
                if not isinstance(mu, QRational) or mu.is_zero:
                    raise PresentationError("zero or non-scalar correction coefficient")
                par = 0
                for g, s in word:
                    if not 0 <= g < n:
                        raise PresentationError("correction references unknown generator")
                    if s not in (1, -1):
                        raise PresentationError("bad letter sign in correction")
                    if s == -1 and not self.generators[g].invertible:
                        raise PresentationError(
                            f"correction inverts non-invertible {self.generators[g].name!r}"
                        )
                    par += self._parities[g]
                if par % 2 != pair_parity:
                    raise PresentationError(
                        f"correction in rule "
                        f"({self.generators[gj].name}, {self.generators[gi].name}) "
                        "breaks the parity grading"
                    )
                if not _word_key(word, self._parities) < lhs_key:
                    raise PresentationError(
                        "correction term is not smaller than the exchanged pair; "
                        "rewriting would not terminate"
                    )
        for j in range(n):
            for i in range(j):
                if (j, 1, i, 1) not in self._rules:
                    raise PresentationError(
                        f"missing exchange rule for "
                        f"({self.generators[j].name}, {self.generators[i].name})"
                    )

    # -- rule lookup --------------------------------------------------------

    def _rule(self, gj, sj, gi, si):
        r = self._rules.get((gj, sj, gi, si))
        if r is None:
            if sj == -1 or si == -1:
                raise UnderivedInverseError(
                    f"no exchange rule for inverse letters in {self.name!r}; "
                    "apply derive_inverse_rules first"
                )
            raise PresentationError("missing exchange rule")  # pragma: no cover
        return r

    # -- element construction -------------------------------------------

    def _element(self, acc):
        terms = [(m, c) for m, c in acc.items() if c]
        if not terms:
            return self._zero
        terms.sort(key=lambda t: self._mono_key(t[0]), reverse=True)
        return Element(self, tuple(terms))

    def _mono_key(self, mono):
        even = sum(abs(e) for g, e in mono if self._parities[g] == EVEN)
        return (even, mono)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def scalar(self, c):
        c = _coerce(c)
        if c is None:
            raise TypeError("scalar expects an int, Fraction or QRational")
        return self._element({(): c})

    def gen(self, name, exp=1):
        """The element g^exp for a generator g given by name."""
        return self.normal_form([(name, exp)])

    # -- words and rewriting ----------------------------------------------

    def letters(self, word):
        """Expand (generator, exponent) pairs into validated single letters."""
        out = []
        for item in word:
            g, e = item
            if isinstance(g, str):
                if g not in self.index:
                    raise AlgebraError(f"unknown generator {g!r} in {self.name!r}")
                g = self.index[g]
            if not isinstance(e, int):
                raise AlgebraError("exponent must be an integer")
            if e == 0:
                continue
            spec = self.generators[g]
            if e < 0 and not spec.invertible:
                raise NonInvertiblePowerError(
                    f"negative power of non-invertible generator {spec.name!r}"
                )
            s = 1 if e > 0 else -1
            out.extend((g, s) for _ in range(abs(e)))
        return tuple(out)

    def normal_form(self, word, coeff=ONE):
        """Normal form of coeff * (product of the word's letters).

        The word is a sequence of (generator, exponent) pairs, generators by
        name or index.  Deterministic: the leftmost out-of-order adjacent pair
        is exchanged first.
        """
        c = _coerce(coeff)
        if c is None:
            raise TypeError("coefficient must be an int, Fraction or QRational")
        return self._element(_reduce(self, [(c, self.letters(word))]))

    def brute_force_nf(self, word, seed, coeff=ONE):
        """Like :meth:`normal_form` but applying rules in seeded random order.

        Exists as an independent check that the rewriting system is confluent:
        on a confluent system every reduction order reaches the same normal
        form.  Test-suite oracle; not meant for production use.

        The zero-branch shortcut (dropping words that repeat an odd
        generator) is disabled here when possible, to keep the oracle
        independent of it.  It stays on for presentations with invertible
        generators: the inverse-pair exchange corrections regenerate their
        own redex while inserting an odd pair, so under arbitrary reduction
        orders the shortcut is what bounds the expansion.  Dropping such
        words is sound regardless: corrections only ever add odd letters,
        and any sorted monomial with a squared odd letter collapses to zero,
        so every descendant of a repeating word contributes nothing.
        """
        import random

        c = _coerce(coeff)
        if c is None:
            raise TypeError("coefficient must be an int, Fraction or QRational")
        rng = random.Random(seed)
        prune = any(g.invertible for g in self.generators)
        return self._element(
            _reduce(self, [(c, self.letters(word))], rng=rng, prune=prune)
        )

    def parity_of(self, mono):
        return sum(self._parities[g] for g, _ in mono) % 2

    def __repr__(self):
        return f"<Presentation {self.name!r}, {len(self.generators)} generators>"


def _has_repeated_odd(pres, word):
    seen = 0
    for g, _ in word:
        if pres._parities[g] == ODD:
            bit = 1 << g
            if seen & bit:
                return True
            seen |= bit
    return False


def _collapse(pres, word):
    # word is rank-sorted; merge runs into exponents, dropping zeros.
    # Returns None when the monomial is zero (odd square).
    out = []
    for g, s in word:
        if out and out[-1][0] == g:
            out[-1][1] += s
        else:
            out.append([g, s])
    mono = []
    for g, e in out:
        if e == 0:
            continue
        if pres._parities[g] == ODD and e >= 2:
            return None
        mono.append((g, e))
    return tuple(mono)


def _reduce(pres, items, *, rng=None, prune=True):
    """Rewrite (coefficient, word) pairs to a {monomial: coefficient} map."""
    acc = {}
    pending = list(items)
    steps = 0
    while pending:
        if rng is None:
            coeff, word = pending.pop()
        else:
            coeff, word = pending.pop(rng.randrange(len(pending)))
        if not coeff:
            continue
        if prune and _has_repeated_odd(pres, word):
            continue
        if rng is None:
            t = None
            for k in range(len(word) - 1):
                if word[k][0] > word[k + 1][0]:
                    t = k
                    break
        else:
            redexes = [
                k for k in range(len(word) - 1) if word[k][0] > word[k + 1][0]
            ]
            t = rng.choice(redexes) if redexes else None
        if t is None:
            m = _collapse(pres, word)
            if m is not None:
                c0 = acc.get(m)
                acc[m] = coeff if c0 is None else c0 + coeff
            continue
        steps += 1
        if steps > _STEP_CAP:
            raise RewriteLimitError("rewriting exceeded the step cap")
        gj, sj = word[t]
        gi, si = word[t + 1]
        lam, corr = pres._rule(gj, sj, gi, si)
        head, tail = word[:t], word[t + 2 :]
        pending.append((coeff * lam, head + (word[t + 1], word[t]) + tail))
        for mu, u in corr:
            pending.append((coeff * mu, head + u + tail))
    return acc


class Element:
    """An element of a presented algebra in normal form.

    Stored as a tuple of (monomial, coefficient) pairs sorted by a fixed
    monomial order, largest first, with no zero coefficients; equal elements
    are structurally equal.  Supports +, -, * (elements and scalars) and
    integer powers; a negative power routes through
    :func:`invert_quasi_unit`.
    """

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms):
        self.pres = pres
        self.terms = terms

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def parity(self):
        """0 or 1 when homogeneous, None for zero or mixed elements."""
        if not self.terms:
            return None
        seen = {self.pres.parity_of(m) for m, _ in self.terms}
        return seen.pop() if len(seen) == 1 else None

    # -- arithmetic -----------------------------------------------------

    def _check(self, other):
        if other.pres is not self.pres:
            raise AlgebraMismatchError(
                f"operands live in different algebras "
                f"({self.pres.name!r} vs {other.pres.name!r})"
            )

    def __add__(self, other):
        if not isinstance(other, Element):
            c = _coerce(other)
            if c is None:
                return NotImplemented
            other = self.pres.scalar(c)
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            c0 = acc.get(m)
            acc[m] = c if c0 is None else c0 + c
        return self.pres._element(acc)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.pres, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        if not isinstance(other, Element):
            c = _coerce(other)
            if c is None:
                return NotImplemented
            other = self.pres.scalar(c)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = _coerce(other)
            if c is None:
                return NotImplemented
            if not c:
                return self.pres._zero
            return Element(self.pres, tuple((m, k * c) for m, k in self.terms))
        self._check(other)
        acc = {}
        items = []
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                c = c1 * c2
                m = _concat(self.pres, m1, m2)
                if m is _NEEDS_REWRITE:
                    items.append((c, _expand(m1) + _expand(m2)))
                elif m is not None:
                    c0 = acc.get(m)
                    acc[m] = c if c0 is None else c0 + c
        if items:
            for m, c in _reduce(self.pres, items).items():
                c0 = acc.get(m)
                acc[m] = c if c0 is None else c0 + c
        return self.pres._element(acc)

    def __rmul__(self, other):
        c = _coerce(other)
        if c is None:
            return NotImplemented
        return self.__mul__(c)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return invert_quasi_unit(self) ** (-n)
        out = self.pres._one
        for _ in range(n):
            out = out * self
        return out

    # -- comparison / rendering -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Element):
            c = _coerce(other)
            if c is None:
                return NotImplemented
            other = self.pres.scalar(c)
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.pres), self.terms))

    def __str__(self):
        return render_element(self)

    __repr__ = __str__


# sentinel: monomial concatenation needs the rewriting engine
_NEEDS_REWRITE = object()


def _concat(pres, m1, m2):
    # Fast path for products of already-ordered monomials.  Returns the
    # combined monomial, None for a zero product, or _NEEDS_REWRITE.
    if not m1:
        return m2
    if not m2:
        return m1
    g1, e1 = m1[-1]
    g2, e2 = m2[0]
    if g1 < g2:
        return m1 + m2
    if g1 > g2:
        return _NEEDS_REWRITE
    e = e1 + e2
    if pres._parities[g1] == ODD and e >= 2:
        return None
    if e == 0:
        return m1[:-1] + m2[1:]
    return m1[:-1] + ((g1, e),) + m2[1:]


def invert_quasi_unit(x):
    """Two-sided inverse of u + nu: u an invertible monomial, nu nilpotent.

    The unit part u must be a single monomial in invertible generators (its
    terms contain no odd letters); every remaining term must contain an odd
    generator, which makes nu nilpotent and the geometric series finite:

        (u + nu)^-1 = u^-1 - u^-1 nu u^-1 + u^-1 nu u^-1 nu u^-1 - ...

    Raises :class:`NotQuasiUnitError` when x has no such splitting.
    """
    pres = x.pres
    unit = [
        (m, c)
        for m, c in x.terms
        if all(pres._parities[g] == EVEN for g, _ in m)
    ]
    if len(unit) != 1:
        raise NotQuasiUnitError(
            "quasi-unit inversion needs exactly one purely even term, "
            f"found {len(unit)}"
        )
    um, uc = unit[0]
    if any(not pres.generators[g].invertible for g, _ in um):
        raise NotQuasiUnitError("even part contains a non-invertible generator")
    inv_word = tuple((g, -e) for g, e in reversed(um))
    u_inv = pres.normal_form(inv_word, uc.inv())
    nil = x - pres._element({um: uc})
    if nil.is_zero:
        return u_inv
    n_odd = sum(1 for g in pres.generators if g.parity == ODD)
    result = u_inv
    term = u_inv
    for _ in range(n_odd + 1):
        term = -(term * nil * u_inv)
        if term.is_zero:
            return result
        result = result + term
    raise NotQuasiUnitError("nilpotent part failed to terminate")  # pragma: no cover


def is_central(x, names=None):
    """True when x commutes with the named generators (default: all)."""
    pres = x.pres
    if names is None:
        names = [g.name for g in pres.generators]
    for n in names:
        g = pres.gen(n)
        if x * g != g * x:
            return False
    return True


# ---------------------------------------------------------------------------
# rendering

_UNICODE_NAMES = {
    "alpha": "α",
    "beta": "β",
    "gamma": "γ",
    "delta": "δ",
    "xi": "ξ",
    "eta": "η",
}

_LATEX_NAMES = {
    "alpha": r"\alpha",
    "beta": r"\beta",
    "gamma": r"\gamma",
    "delta": r"\delta",
    "xi": r"\xi",
    "eta": r"\eta",
}


def _display_name(name, table, prime):
    if len(name) > 1 and name.endswith("2"):
        return table.get(name[:-1], name[:-1]) + prime
    return table.get(name, name)


def _mono_str(pres, mono):
    parts = []
    for g, e in mono:
        name = pres.generators[g].name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _coeff_str(mag, has_mono, solo_positive):
    # mag has a positive leading numerator coefficient; the caller renders
    # the sign.  Output must reparse as one factor when followed by "*".
    from .qfield import _PONE, _pstr

    if has_mono and mag.is_one:
        return None
    if mag.den == _PONE:
        if len(mag.num) == 1 and mag.num[0][1] > 0:
            return _pstr(mag.num)
        if solo_positive and not has_mono:
            return _pstr(mag.num)
        return f"({_pstr(mag.num)})"
    return str(mag)


def render_element(x, style="ascii"):
    """Canonical text for an element.

    The default ascii style is the round-trip format accepted by the
    expression parser; ``unicode`` and ``latex`` are display-only styles.
    """
    if style == "ascii":
        return _render_plain(x, None, "", "*", lambda e: f"^{e}")
    if style == "unicode":
        return _render_plain(x, _UNICODE_NAMES, "′", "*", lambda e: f"^{e}")
    if style == "latex":
        return _render_plain(x, _LATEX_NAMES, "'", " ", lambda e: f"^{{{e}}}")
    raise ValueError(f"unknown render style {style!r}")


def _latex_poly(p):
    from .qfield import _pstr

    return re.sub(r"\^(-?\d+)", r"^{\1}", _pstr(p)).replace("*", " ")


def _latex_coeff(mag, has_mono):
    from .qfield import _PONE

    if has_mono and mag.is_one:
        return None
    if mag.den == _PONE:
        s = _latex_poly(mag.num)
        return f"({s})" if len(mag.num) > 1 and has_mono else s
    return rf"\frac{{{_latex_poly(mag.num)}}}{{{_latex_poly(mag.den)}}}"


def _render_plain(x, names, prime, sep, pow_fmt):
    if not x.terms:
        return "0"
    latex = sep == " "
    solo = len(x.terms) == 1
    out = []
    for mono, coeff in x.terms:
        neg = coeff.num[-1][1] < 0
        mag = -coeff if neg else coeff
        letters = []
        for g, e in mono:
            name = x.pres.generators[g].name
            if names is not None:
                name = _display_name(name, names, prime)
            letters.append(name if e == 1 else name + pow_fmt(e))
        mono_s = sep.join(letters)
        if latex:
            coeff_s = _latex_coeff(mag, bool(mono_s))
        else:
            coeff_s = _coeff_str(mag, bool(mono_s), solo and not neg)
        if coeff_s is None:
            body = mono_s
        elif mono_s:
            body = f"{coeff_s}{sep}{mono_s}"
        else:
            body = coeff_s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
