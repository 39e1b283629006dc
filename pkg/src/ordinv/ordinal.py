"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)`` pairs
with strictly decreasing exponents (themselves ordinals) and positive integer
coefficients.  Every constructor canonicalises eagerly, so equality is
structural.

Besides ordinal ``+`` and ``*`` the module provides the commutative natural
(Hessenberg) sum and product, the Heisenberg product governing widths of
direct products, and the height supremum used for Cartesian products.
"""

from __future__ import annotations

from functools import lru_cache, total_ordering
from typing import Callable, Iterable, Union

__all__ = [
    "Ordinal",
    "OrdinalLike",
    "OrdinalSyntaxError",
    "ZERO",
    "ONE",
    "OMEGA",
    "as_ordinal",
    "compare",
    "add",
    "mul",
    "nat_sum",
    "nat_prod",
    "heisenberg",
    "hsup",
    "omega_pow",
    "is_additively_principal",
    "is_multiplicatively_principal",
    "fundamental_sequence",
    "omega_quotient",
    "min_natural_cofactor",
    "predecessor",
    "parse_ordinal",
    "format_ordinal",
    "to_json",
    "from_json",
]


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple["Ordinal", int]] = ()):
        # Callers outside this module should use Ordinal.from_terms.
        self.terms: tuple[tuple[Ordinal, int], ...] = tuple(terms)
        self._hash: int | None = None

    @classmethod
    def from_terms(cls, terms: Iterable[tuple["OrdinalLike", int]]) -> "Ordinal":
        """Build an ordinal from arbitrary (exponent, coefficient) pairs.

        Pairs are read as the ordinal sum ``w^e1*c1 + w^e2*c2 + ...`` in the
        given order, so out-of-order pairs are absorbed as ordinal addition
        would absorb them.
        """
        out = ZERO
        for e, c in terms:
            if c < 0:
                raise ValueError("negative coefficient")
            if c:
                out = add(out, cls(((as_ordinal(e), int(c)),)))
        return out

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError(f"no negative ordinals: {n}")
        return _finite(n)

    # -- predicates -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0]

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and bool(self.terms[-1][0])

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("0 has no leading exponent")
        return self.terms[0][0]

    @property
    def last_exponent(self) -> "Ordinal":
        """Smallest exponent of the normal form."""
        if not self.terms:
            raise ValueError("0 has no exponents")
        return self.terms[-1][0]

    def split_finite(self) -> tuple["Ordinal", int]:
        """Return ``(limit_part, n)`` with ``self == limit_part + n``."""
        if self.terms and not self.terms[-1][0]:
            return Ordinal(self.terms[:-1]), self.terms[-1][1]
        return self, 0

    def max_coefficient(self) -> int:
        """Largest coefficient appearing anywhere, exponents included."""
        best = 0
        for e, c in self.terms:
            best = max(best, c, e.max_coefficient())
        return best

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Ordinal):
            return self is other or self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self.is_finite and int(self) == other
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (Ordinal, int)) and not isinstance(other, bool):
            return compare(self, other) < 0
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = int(self) if self.is_finite else hash(self.terms)
        return self._hash

    # -- arithmetic sugar (ordinal, non-commutative) ----------------------

    def __add__(self, other: OrdinalLike) -> "Ordinal":
        return add(self, other)

    def __radd__(self, other: OrdinalLike) -> "Ordinal":
        return add(other, self)

    def __mul__(self, other: OrdinalLike) -> "Ordinal":
        return mul(self, other)

    def __rmul__(self, other: OrdinalLike) -> "Ordinal":
        return mul(other, self)

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    def __reduce__(self):
        return (from_json, (to_json(self),))


OrdinalLike = Union[Ordinal, int]

ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


@lru_cache(maxsize=256)
def _finite(n: int) -> Ordinal:
    return Ordinal(((ZERO, n),)) if n else ZERO


def as_ordinal(x: OrdinalLike) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.of(x)
    raise TypeError(f"not an ordinal: {x!r}")


def compare(a: OrdinalLike, b: OrdinalLike) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = as_ordinal(a), as_ordinal(b)
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def omega_pow(e: OrdinalLike) -> Ordinal:
    return Ordinal(((as_ordinal(e), 1),))


def _term(e: Ordinal, c: int) -> Ordinal:
    return Ordinal(((e, c),)) if c else ZERO


# -- ordinal (non-commutative) operations -----------------------------------


@lru_cache(maxsize=1 << 16)
def _add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    if not a.terms:
        return b
    b0, c0 = b.terms[0]
    kept = []
    for e, c in a.terms:
        s = compare(e, b0)
        if s > 0:
            kept.append((e, c))
        elif s == 0:
            c0 += c
            break
        else:
            break
    return Ordinal(tuple(kept) + ((b0, c0),) + b.terms[1:])


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Ordinal sum ``a + b``; small left terms are absorbed."""
    return _add(as_ordinal(a), as_ordinal(b))


@lru_cache(maxsize=1 << 16)
def _mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    a0, m0 = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if e.terms:
            piece = _term(_add(a0, e), c)
        else:
            piece = Ordinal(((a0, m0 * c),) + a.terms[1:])
        out = _add(out, piece)
    return out


def mul(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Ordinal product ``a * b`` (``b`` copies of ``a``)."""
    return _mul(as_ordinal(a), as_ordinal(b))


def predecessor(a: OrdinalLike) -> Ordinal:
    a = as_ordinal(a)
    if not a.is_successor:
        raise ValueError(f"{a} is not a successor")
    lim, n = a.split_finite()
    return _add(lim, _finite(n - 1))


# -- natural operations ------------------------------------------------------


def _from_coeffs(coeffs: dict[Ordinal, int]) -> Ordinal:
    items = sorted(((e, c) for e, c in coeffs.items() if c), key=_SortKey, reverse=True)
    return Ordinal(tuple(items))


class _SortKey:
    __slots__ = ("e",)

    def __init__(self, item: tuple[Ordinal, int]):
        self.e = item[0]

    def __lt__(self, other: "_SortKey") -> bool:
        return compare(self.e, other.e) < 0


@lru_cache(maxsize=1 << 16)
def _nat_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms:
        return b
    if not b.terms:
        return a
    coeffs: dict[Ordinal, int] = {}
    for e, c in a.terms + b.terms:
        coeffs[e] = coeffs.get(e, 0) + c
    return _from_coeffs(coeffs)


def nat_sum(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Natural (Hessenberg) sum: coefficient-wise addition of normal forms."""
    return _nat_sum(as_ordinal(a), as_ordinal(b))


@lru_cache(maxsize=1 << 16)
def _nat_prod(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    coeffs: dict[Ordinal, int] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = _nat_sum(ea, eb)
            coeffs[e] = coeffs.get(e, 0) + ca * cb
    return _from_coeffs(coeffs)


def nat_prod(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Natural (Hessenberg) product: normal forms multiplied as polynomials in w."""
    return _nat_prod(as_ordinal(a), as_ordinal(b))


def heisenberg(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Heisenberg product ``a (.) b``.

    Defined by ``a (.) 0 = 0``, ``a (.) (b+1) = (a (.) b) (+) a`` and
    ``a (.) lam = sup{(a (.) g) + 1 : g < lam}``.  Evaluated through the closed
    form ``a (.) (lam + n) = a*lam (+) a(x)n``; ``ordinv.sampling`` holds the
    direct recursive evaluator it is tested against.
    """
    a, b = as_ordinal(a), as_ordinal(b)
    lam, n = b.split_finite()
    return _nat_sum(_mul(a, lam), _nat_prod(a, _finite(n)))


def _decrement_last(a: Ordinal) -> Ordinal:
    e, c = a.terms[-1]
    return Ordinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))


def hsup(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """``sup{x (+) y + 1 : x < a, y < b}``, the height of a product of chains."""
    a, b = as_ordinal(a), as_ordinal(b)
    if not a.terms or not b.terms:
        return ZERO
    if a.is_successor and b.is_successor:
        return _add(_nat_sum(predecessor(a), predecessor(b)), ONE)
    if b.is_limit and not a.is_limit:
        a, b = b, a
    # a is a limit from here on
    if b.is_successor:
        return _add(_nat_sum(_decrement_last(a), predecessor(b)), omega_pow(a.last_exponent))
    g = max(a.last_exponent, b.last_exponent)
    return _add(_nat_sum(_decrement_last(a), _decrement_last(b)), omega_pow(g))


# -- principality ------------------------------------------------------------


def is_additively_principal(a: OrdinalLike) -> bool:
    # 0 is excluded and 1 = w^0 is included.
    a = as_ordinal(a)
    return len(a.terms) == 1 and a.terms[0][1] == 1


def is_multiplicatively_principal(a: OrdinalLike) -> bool:
    a = as_ordinal(a)
    if a == 1 or a == 2:
        return True
    return is_additively_principal(a) and is_additively_principal(a.leading_exponent)


# -- limits ------------------------------------------------------------------


def fundamental_sequence(lim: OrdinalLike, n: int) -> Ordinal:
    """The ``n``-th element of the standard fundamental sequence of ``lim``."""
    lim = as_ordinal(lim)
    if not lim.is_limit:
        raise ValueError(f"{lim} is not a limit ordinal")
    if n < 0:
        raise ValueError("index must be a natural number")
    head = _decrement_last(lim)
    g = lim.last_exponent
    if g.is_successor:
        return _add(head, _term(predecessor(g), n))
    return _add(head, omega_pow(fundamental_sequence(g, n)))


def omega_quotient(lim: OrdinalLike) -> Ordinal:
    """The unique ``q`` with ``lim == w * q``."""
    lim = as_ordinal(lim)
    if not lim.is_limit:
        raise ValueError(f"{lim} is not a limit ordinal")
    out = []
    for e, c in lim.terms:
        out.append((predecessor(e) if e.is_finite else e, c))
    return Ordinal(tuple(out))


def _least_with(pred: Callable[[Ordinal], bool], kbound: int) -> Ordinal:
    """Least ordinal satisfying an upward-closed predicate.

    The predicate must hold somewhere below epsilon_0, and whenever it fails
    for ``w^e * k`` with ``k > kbound`` it fails for every ``k``.
    """
    if pred(ZERO):
        return ZERO
    eps = _least_with(lambda e: pred(omega_pow(e)), kbound)
    if not eps.terms:
        return ONE
    if eps.is_limit:
        return omega_pow(eps)
    e = predecessor(eps)
    k = 1
    while not pred(_term(e, k + 1)):
        k += 1
        if k > kbound:
            return omega_pow(eps)
    base = _term(e, k)
    return _add(base, _least_with(lambda x: pred(_add(base, x)), kbound))


def min_natural_cofactor(h: OrdinalLike, o: OrdinalLike) -> Ordinal:
    """Least ``x`` with ``h (x) x >= o``.

    With ``h`` a height and ``o`` a maximal order type this is a lower bound
    for the width.
    """
    h, o = as_ordinal(h), as_ordinal(o)
    if not h.terms:
        raise ValueError("h must be at least 1")
    kbound = o.max_coefficient() + h.max_coefficient() + 2
    x = _least_with(lambda y: compare(_nat_prod(h, y), o) >= 0, kbound)
    if compare(_nat_prod(h, x), o) < 0:
        raise ArithmeticError(f"cofactor check failed for h={h}, o={o}")
    if x.is_successor and compare(_nat_prod(h, predecessor(x)), o) >= 0:
        raise ArithmeticError(f"cofactor not minimal for h={h}, o={o}")
    return x


# -- text syntax -------------------------------------------------------------


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_OMEGA_CHARS = ("w", "ω")


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _read_nat(text: str, pos: int) -> tuple[int, int] | None:
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        return None
    return int(text[pos:end]), end


def _is_omega(text: str, pos: int) -> bool:
    if pos >= len(text) or text[pos] not in _OMEGA_CHARS:
        return False
    nxt = pos + 1
    return nxt >= len(text) or not (text[nxt].isalnum() or text[nxt] == "_")


def _parse_exponent(text: str, pos: int) -> tuple[Ordinal, int]:
    pos = _skip(text, pos)
    if pos < len(text) and text[pos] == "(":
        val, pos = parse_ordinal_prefix(text, pos + 1)
        pos = _skip(text, pos)
        if pos >= len(text) or text[pos] != ")":
            raise OrdinalSyntaxError("expected ')'", text, pos)
        return val, pos + 1
    nat = _read_nat(text, pos)
    if nat is not None:
        return Ordinal.of(nat[0]), nat[1]
    if _is_omega(text, pos):
        pos += 1
        q = _skip(text, pos)
        if q < len(text) and text[q] == "^":
            e, pos = _parse_exponent(text, q + 1)
            return omega_pow(e), pos
        return OMEGA, pos
    raise OrdinalSyntaxError("expected exponent", text, pos)


def _parse_term(text: str, pos: int) -> tuple[Ordinal, int]:
    pos = _skip(text, pos)
    nat = _read_nat(text, pos)
    if nat is not None:
        return Ordinal.of(nat[0]), nat[1]
    if not _is_omega(text, pos):
        raise OrdinalSyntaxError("expected ordinal term", text, pos)
    pos += 1
    e = ONE
    q = _skip(text, pos)
    if q < len(text) and text[q] == "^":
        e, pos = _parse_exponent(text, q + 1)
    coeff = 1
    q = _skip(text, pos)
    if q < len(text) and text[q] == "*":
        nat = _read_nat(text, _skip(text, q + 1))
        if nat is None:
            raise OrdinalSyntaxError("expected natural coefficient", text, _skip(text, q + 1))
        coeff, pos = nat
    return _term(e, coeff), pos


def parse_ordinal_prefix(text: str, pos: int = 0) -> tuple[Ordinal, int]:
    """Parse an ordinal starting at ``pos``; return it and the end position.

    A ``'+'`` directly followed by another ``'+'`` ends the ordinal so that
    poset expressions can use ``++`` for lexicographic sums.
    """
    val, pos = _parse_term(text, pos)
    while True:
        q = _skip(text, pos)
        if q < len(text) and text[q] == "+" and not text.startswith("++", q):
            term, pos = _parse_term(text, q + 1)
            val = add(val, term)
        else:
            return val, pos


def parse_ordinal(text: str) -> Ordinal:
    """Parse e.g. ``"w^w*2 + w^2 + 3"`` (``w`` or the Greek letter for omega)."""
    val, pos = parse_ordinal_prefix(text, 0)
    pos = _skip(text, pos)
    if pos != len(text):
        raise OrdinalSyntaxError("unexpected trailing input", text, pos)
    return val


def _format_exponent(e: Ordinal) -> str:
    if e.is_finite:
        return str(int(e))
    if len(e.terms) == 1 and e.terms[0][1] == 1:
        return format_ordinal(e)
    return f"({format_ordinal(e)})"


def format_ordinal(a: OrdinalLike) -> str:
    a = as_ordinal(a)
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        s = "w" if e == 1 else f"w^{_format_exponent(e)}"
        parts.append(s if c == 1 else f"{s}*{c}")
    return " + ".join(parts)


def to_json(a: OrdinalLike) -> list:
    """Nested-list normal form ``[[exp, coeff], ...]``."""
    return [[to_json(e), c] for e, c in as_ordinal(a).terms]


def from_json(data) -> Ordinal:
    if isinstance(data, int) and not isinstance(data, bool):
        return Ordinal.of(data)
    if not isinstance(data, list):
        raise ValueError(f"bad ordinal JSON: {data!r}")
    terms = []
    for item in data:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int) and item[1] > 0):
            raise ValueError(f"bad ordinal term: {item!r}")
        terms.append((from_json(item[0]), item[1]))
    for (e1, _), (e2, _) in zip(terms, terms[1:]):
        if compare(e1, e2) <= 0:
            raise ValueError("exponents must be strictly decreasing")
    return Ordinal(tuple(terms))
