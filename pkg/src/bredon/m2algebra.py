"""Symbolic arithmetic in the bigraded coefficient ring of the point.

The ring (written M2 throughout) has an upper cone that is polynomial on
``r`` (bidegree (1,1)) and ``t`` (bidegree (0,1)), and a lower cone of
elements infinitely divisible under ``T`` (bidegree (0,-2)), with
``T*T = 0`` and ``r*T = t*T = 0``.  Each bidegree holds at most one
monomial, so elements are just finite sets of monomials.

The module also provides the two standard summand shapes every answer is
built from (a shifted copy of the point ring, and a shifted width-(n+1)
antipodal strip), graded-ideal classification, the multiplier-extension
rule for maps out of graded ideals, and bases for degree-shifting module
maps between standard summands.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union


@dataclass(frozen=True, order=True)
class Bidegree:
    """Pair (p, q): topological dimension and weight; p - q is the
    fixed-set dimension."""

    p: int
    q: int

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.p - other.p, self.q - other.q)


UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True, order=True)
class M2Monomial:
    """A monomial of the point ring.

    ``Upper(a, b)`` is r^a t^b sitting at (a, a+b); ``Lower(a, b)`` is
    T/(r^a t^b) sitting at (-a, -2-a-b).  Exponents are nonnegative.
    """

    cone: str
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.cone not in (UPPER, LOWER):
            raise ValueError("cone must be 'upper' or 'lower'")
        if self.a < 0 or self.b < 0:
            raise ValueError("exponents must be nonnegative")

    @property
    def bidegree(self) -> Bidegree:
        if self.cone == UPPER:
            return Bidegree(self.a, self.a + self.b)
        return Bidegree(-self.a, -2 - self.a - self.b)

    def is_upper(self) -> bool:
        return self.cone == UPPER

    def __str__(self) -> str:
        if self.cone == UPPER:
            if self.a == 0 and self.b == 0:
                return "1"
            return " ".join(_pow(s, e) for s, e in (("r", self.a), ("t", self.b)) if e)
        if self.a == 0 and self.b == 0:
            return "T"
        denom = " ".join(_pow(s, e) for s, e in (("r", self.a), ("t", self.b)) if e)
        return f"T/({denom})"


def Upper(a: int, b: int) -> M2Monomial:
    return M2Monomial(UPPER, a, b)


def Lower(a: int, b: int) -> M2Monomial:
    return M2Monomial(LOWER, a, b)


ONE = Upper(0, 0)
RHO = Upper(1, 0)
TAU = Upper(0, 1)
THETA = Lower(0, 0)


def _pow(sym: str, e: int) -> str:
    return sym if e == 1 else f"{sym}^{e}"


def monomial_at(d: Bidegree) -> Optional[M2Monomial]:
    """The unique monomial at a bidegree, or None when the ring is zero there."""
    if 0 <= d.p <= d.q:
        return Upper(d.p, d.q - d.p)
    if d.p <= 0 and d.q <= d.p - 2:
        return Lower(-d.p, -2 + d.p - d.q)
    return None


def cone_supports(d: Bidegree) -> bool:
    return monomial_at(d) is not None


@dataclass(frozen=True)
class M2Element:
    """A finite F2-sum of monomials; presence means coefficient 1.

    No two monomials of an element share a bidegree (automatic, as each
    bidegree holds at most one monomial).  The empty set is zero.
    """

    monomials: frozenset[M2Monomial]

    @staticmethod
    def of(*monos: M2Monomial) -> "M2Element":
        acc: set[M2Monomial] = set()
        for m in monos:
            acc ^= {m}
        return M2Element(frozenset(acc))

    @staticmethod
    def zero() -> "M2Element":
        return M2Element(frozenset())

    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: "M2Element") -> "M2Element":
        return M2Element(self.monomials ^ other.monomials)

    def __iter__(self) -> Iterator[M2Monomial]:
        return iter(sorted(self.monomials))

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join(str(m) for m in sorted(self.monomials))


def mul_monomials(x: M2Monomial, y: M2Monomial) -> Optional[M2Monomial]:
    """Product of two monomials, or None when it vanishes."""
    if x.is_upper() and y.is_upper():
        return Upper(x.a + y.a, x.b + y.b)
    if not x.is_upper() and not y.is_upper():
        return None
    up, low = (x, y) if x.is_upper() else (y, x)
    if low.a >= up.a and low.b >= up.b:
        return Lower(low.a - up.a, low.b - up.b)
    return None


def mul_m2(x: M2Element, y: M2Element) -> M2Element:
    """Bilinear extension of the monomial product."""
    acc: set[M2Monomial] = set()
    for mx in x.monomials:
        for my in y.monomials:
            prod = mul_monomials(mx, my)
            if prod is not None:
                acc ^= {prod}
    return M2Element(frozenset(acc))


# -- rendering / parsing ----------------------------------------------

_TOKEN = re.compile(r"\s*(T|r|t|\^|\(|\)|/|\+|\d+|1)\s*")


def render(x: M2Element) -> str:
    return str(x)


def parse_element(text: str) -> M2Element:
    """Parse the textual rendering back into an element.

    Grammar: terms joined by '+'; a term is '0', '1', 'T',
    'r[^a] [t[^b]]', or 'T/(r[^a] [t[^b]])'.
    """
    text = text.strip()
    if text == "0":
        return M2Element.zero()
    acc = M2Element.zero()
    for term in text.split("+"):
        acc = acc + M2Element.of(_parse_monomial(term.strip()))
    return acc


def _parse_monomial(term: str) -> M2Monomial:
    if term == "1":
        return ONE
    if term == "T":
        return THETA
    m = re.fullmatch(r"T\s*/\s*\(([^)]*)\)", term)
    if m:
        a, b = _parse_powers(m.group(1))
        return Lower(a, b)
    a, b = _parse_powers(term)
    return Upper(a, b)


def _parse_powers(body: str) -> tuple[int, int]:
    a = b = 0
    seen = False
    for sym, exp in re.findall(r"([rt])(?:\^(\d+))?", body):
        seen = True
        e = int(exp) if exp else 1
        if sym == "r":
            a += e
        else:
            b += e
    if not seen:
        raise ValueError(f"cannot parse monomial {body!r}")
    return a, b


# -- standard summands -------------------------------------------------


@dataclass(frozen=True, order=True)
class FreeShift:
    """A copy of the point ring with its generator moved to (p, q)."""

    p: int
    q: int


@dataclass(frozen=True, order=True)
class AntipodalShift:
    """A width-(n+1) antipodal strip starting at column r (weight shift 0;
    any weight shift is absorbed because t acts invertibly)."""

    r: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("strip length must be nonnegative")


StandardSummand = Union[FreeShift, AntipodalShift]


def _sort_key(s: StandardSummand) -> tuple:
    if isinstance(s, FreeShift):
        return (0, s.p, s.q)
    return (1, s.r, s.n)


def decomposition_sort_key(d: "Decomposition") -> tuple:
    return tuple(_sort_key(s) for s in d)


@dataclass(frozen=True)
class Decomposition:
    """A finite multiset of standard summands, kept in canonical order."""

    summands: tuple[StandardSummand, ...]

    @staticmethod
    def of(*summands: StandardSummand) -> "Decomposition":
        return Decomposition(tuple(sorted(summands, key=_sort_key)))

    @staticmethod
    def from_iterable(summands: Iterable[StandardSummand]) -> "Decomposition":
        return Decomposition.of(*summands)

    def __iter__(self) -> Iterator[StandardSummand]:
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def free_parts(self) -> list[FreeShift]:
        return [s for s in self.summands if isinstance(s, FreeShift)]

    def strip_parts(self) -> list[AntipodalShift]:
        return [s for s in self.summands if isinstance(s, AntipodalShift)]

    def union(self, other: "Decomposition") -> "Decomposition":
        return Decomposition.of(*self.summands, *other.summands)

    def without_one(self, s: StandardSummand) -> "Decomposition":
        lst = list(self.summands)
        lst.remove(s)
        return Decomposition.of(*lst)

    def dim_at(self, p: int, q: int) -> int:
        return sum(summand_data(s, Bidegree(p, q))[0] for s in self.summands)

    def rho_rank_at(self, p: int, q: int) -> int:
        return sum(summand_data(s, Bidegree(p, q))[1] for s in self.summands)

    def to_json(self) -> list[dict]:
        out = []
        for s in self.summands:
            if isinstance(s, FreeShift):
                out.append({"type": "M2", "p": s.p, "q": s.q})
            else:
                out.append({"type": "A", "r": s.r, "n": s.n})
        return out

    @staticmethod
    def from_json(data: list[dict]) -> "Decomposition":
        summands: list[StandardSummand] = []
        for item in data:
            if item.get("type") == "M2":
                summands.append(FreeShift(int(item["p"]), int(item["q"])))
            elif item.get("type") == "A":
                summands.append(AntipodalShift(int(item["r"]), int(item["n"])))
            else:
                raise ValueError(f"unknown summand type {item!r}")
        return Decomposition.of(*summands)

    def describe(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for s in self.summands:
            if isinstance(s, FreeShift):
                parts.append(f"S^({s.p},{s.q}) M2")
            else:
                parts.append(f"S^({s.r},0) A_{s.n}")
        return " + ".join(parts)


def summand_data(s: StandardSummand, d: Bidegree) -> tuple[int, int, int, int]:
    """Closed-form (dim, rho entry, tau entry, theta entry) at a bidegree.

    Entries give the 1x1 operator blocks out of this bidegree: rho lands
    at (p+1, q+1), tau at (p, q+1), theta at (p, q-2).
    """
    if isinstance(s, FreeShift):
        rel = d - Bidegree(s.p, s.q)
        dim = 1 if cone_supports(rel) else 0
        rho = 1 if dim and cone_supports(rel + Bidegree(1, 1)) else 0
        tau = 1 if dim and cone_supports(rel + Bidegree(0, 1)) else 0
        theta = 1 if (rel.p, rel.q) == (0, 0) else 0
        return dim, rho, tau, theta
    col = d.p - s.r
    dim = 1 if 0 <= col <= s.n else 0
    rho = 1 if 0 <= col <= s.n - 1 else 0
    tau = dim
    return dim, rho, tau, 0


# -- graded ideals and the multiplier extension ------------------------

TYPE_I = "I"
TYPE_II = "II"


class ClassificationError(ValueError):
    """An ideal-map assignment violating the degree constraints."""


@dataclass(frozen=True)
class GradedIdeal:
    """A graded ideal given by a divisibility-reduced generator set.

    Type I: some generator lies in the upper cone (the whole lower cone
    is then contained).  Type II: all elements lie in the lower cone.
    """

    generators: tuple[M2Monomial, ...]
    classification: str

    def contains(self, z: M2Monomial) -> bool:
        if self.classification == TYPE_I:
            if not z.is_upper():
                return True
            return any(g.is_upper() and g.a <= z.a and g.b <= z.b
                       for g in self.generators)
        if z.is_upper():
            return False
        return any(z.a <= g.a and z.b <= g.b for g in self.generators)


def classify_ideal(gens: list[M2Monomial]) -> GradedIdeal:
    """Classify and normalize the graded ideal generated by monomials."""
    if not gens:
        raise ValueError("an ideal needs at least one generator")
    uppers = [g for g in gens if g.is_upper()]
    if uppers:
        minimal = [g for g in uppers
                   if not any(h != g and h.a <= g.a and h.b <= g.b for h in uppers)]
        return GradedIdeal(tuple(sorted(set(minimal))), TYPE_I)
    lowers = list(gens)
    maximal = [g for g in lowers
               if not any(h != g and h.a >= g.a and h.b >= g.b for h in lowers)]
    return GradedIdeal(tuple(sorted(set(maximal))), TYPE_II)


def baer_extend(ideal: GradedIdeal, generator: M2Monomial,
                image: M2Monomial) -> M2Element:
    """Multiplier lambda with lambda * generator == image, extending the
    assignment to the whole ideal.

    The assignment must be admissible: for a type I ideal the assigned
    generator is upper and an upper image r^a t^b needs a >= m, b >= n;
    for type II both are lower and the image T/(r^a t^b) needs m >= a,
    n >= b.  Violations raise ClassificationError naming the inequality.
    """
    if not ideal.contains(generator):
        raise ClassificationError("assigned generator does not lie in the ideal")
    if ideal.classification == TYPE_I:
        if not generator.is_upper():
            raise ClassificationError(
                "type I assignments must be made on an upper-cone generator")
        m, n = generator.a, generator.b
        if image.is_upper():
            a, b = image.a, image.b
            if a < m:
                raise ClassificationError(f"upper image needs a >= m ({a} < {m})")
            if b < n:
                raise ClassificationError(f"upper image needs b >= n ({b} < {n})")
            return M2Element.of(Upper(a - m, b - n))
        a, b = image.a, image.b
        return M2Element.of(Lower(a + m, b + n))
    # type II
    if generator.is_upper():
        raise ClassificationError("type II ideals contain no upper-cone elements")
    if image.is_upper():
        raise ClassificationError(
            "a map of a type II ideal cannot hit the upper cone")
    m, n = generator.a, generator.b
    a, b = image.a, image.b
    if m < a:
        raise ClassificationError(f"lower image needs m >= a ({m} < {a})")
    if n < b:
        raise ClassificationError(f"lower image needs n >= b ({n} < {b})")
    return M2Element.of(Upper(m - a, n - b))


# -- bases of degree-shift maps between standard summands ---------------


@dataclass(frozen=True)
class HomElement:
    """A module map between standard summands determined by the image of
    the canonical generator, raising bidegree by ``shift``.

    ``kind`` is one of "free-free", "free-strip", "strip-strip",
    "strip-free"; ``seed`` describes the generator image (a monomial for
    maps into a free summand, a strip column otherwise).
    """

    src: StandardSummand
    dst: StandardSummand
    shift: Bidegree
    kind: str
    seed: object

    def entry_at(self, p: int, q: int) -> int:
        """Coefficient of the induced map from the (at most 1-dim) source
        bidegree (p, q) to (p, q) + shift in the target."""
        if summand_data(self.src, Bidegree(p, q))[0] == 0:
            return 0
        tgt = Bidegree(p, q) + self.shift
        if self.kind == "free-free":
            src_mono = monomial_at(Bidegree(p, q) - Bidegree(self.src.p, self.src.q))
            prod = mul_monomials(src_mono, self.seed)
            return 0 if prod is None else 1
        if self.kind == "free-strip":
            src_mono = monomial_at(Bidegree(p, q) - Bidegree(self.src.p, self.src.q))
            if not src_mono.is_upper():
                return 0
            return summand_data(self.dst, tgt)[0]
        if self.kind == "strip-strip":
            return summand_data(self.dst, tgt)[0]
        # strip-free: nonzero exactly where the target bidegree carries a
        # lower-cone monomial (validity of the seed was checked on build).
        rel = tgt - Bidegree(self.dst.p, self.dst.q)
        mono = monomial_at(rel)
        return 1 if mono is not None and not mono.is_upper() else 0

    def describe(self) -> str:
        return f"{self.kind}:{self.seed}"


def hom_basis(src: StandardSummand, dst: StandardSummand,
              shift: Bidegree) -> list[HomElement]:
    """Basis of generator-determined module maps src -> dst of the given
    degree shift.

    Every case is at most one-dimensional: a map out of a free summand is
    multiplication by the ring element in the forced bidegree; a map out
    of a strip is a scalar (into a strip, subject to the nilpotence of r)
    or a lower-cone seed with r-divisibility at most the strip length
    (into a free summand).
    """
    if isinstance(src, FreeShift):
        tgt = Bidegree(src.p, src.q) + shift
        if isinstance(dst, FreeShift):
            mono = monomial_at(tgt - Bidegree(dst.p, dst.q))
            if mono is None:
                return []
            return [HomElement(src, dst, shift, "free-free", mono)]
        col = tgt.p - dst.r
        if 0 <= col <= dst.n:
            return [HomElement(src, dst, shift, "free-strip", col)]
        return []
    if isinstance(dst, AntipodalShift):
        # Scalar map: generator image column must exist, and r^(n+1) = 0 in
        # the source must be respected, i.e. column col + src.n + 1 leaves
        # the target strip.
        col = (src.r + shift.p) - dst.r
        if 0 <= col <= dst.n and col + src.n + 1 > dst.n:
            return [HomElement(src, dst, shift, "strip-strip", col)]
        return []
    # strip -> free: seed is the image of the strip generator at (r, 0)
    rel = Bidegree(src.r, 0) + shift - Bidegree(dst.p, dst.q)
    mono = monomial_at(rel)
    if mono is None or mono.is_upper():
        return []
    if mono.a > src.n:
        return []
    return [HomElement(src, dst, shift, "strip-free", mono)]
