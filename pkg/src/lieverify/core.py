"""Half-integer graded Lie algebras given by index-polynomial bracket rules.

Indices are stored doubled (twice the displayed value) so that half-integer
indices such as n+1/2 are ordinary integers.  Each family of basis symbols
lives on one lattice: `integer` (L_n), `half` (Y_{n+1/2}) or `central`
(a single unindexed generator).  Bracket rules are listed for one
orientation of each family pair; the opposite orientation is synthesized by
antisymmetry.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Optional

from .poly import Poly

INTEGER = "integer"
HALF = "half"
CENTRAL = "central"
LATTICES = (INTEGER, HALF, CENTRAL)


class StructureError(ValueError):
    """Structurally invalid algebra data, or a symbol outside the algebra."""


class WindowError(ValueError):
    """A truncation window violates its size invariants."""


@dataclass(frozen=True)
class Family:
    """One family of basis symbols (L, M, Y, C_L, ...)."""

    name: str
    lattice: str
    shift2: int = 0  # twice-degree added to the index to give the grading degree

    def __post_init__(self) -> None:
        if self.lattice not in LATTICES:
            raise StructureError(f"unknown lattice {self.lattice!r} for family {self.name}")
        if self.lattice == CENTRAL and self.shift2 != 0:
            raise StructureError(f"central family {self.name} must have degree 0")


class BasisSymbol(NamedTuple):
    """A single basis symbol: family name plus doubled index (None if central)."""

    family: str
    twice: Optional[int]


def format_index2(twice: int) -> str:
    return str(twice // 2) if twice % 2 == 0 else f"{twice}/2"


def format_symbol(sym: BasisSymbol) -> str:
    if sym.twice is None:
        return sym.family
    return f"{sym.family}({format_index2(sym.twice)})"


class Element:
    """Finite rational linear combination of basis symbols.

    Normal form: no zero coefficients are ever stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[BasisSymbol, Fraction] | None = None):
        self.terms: dict[BasisSymbol, Fraction] = {}
        if terms:
            for sym, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    self.terms[sym] = coeff

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def basis(cls, sym: BasisSymbol, coeff: Fraction | int = 1) -> "Element":
        return cls({sym: Fraction(coeff)})

    def __add__(self, other: "Element") -> "Element":
        merged = dict(self.terms)
        for sym, coeff in other.terms.items():
            merged[sym] = merged.get(sym, Fraction(0)) + coeff
        return Element(merged)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def scale(self, factor: Fraction | int) -> "Element":
        factor = Fraction(factor)
        return Element({sym: coeff * factor for sym, coeff in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def items(self):
        return self.terms.items()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for sym in sorted(self.terms, key=lambda s: (s.family, s.twice if s.twice is not None else 0)):
            coeff = self.terms[sym]
            parts.append(f"{coeff}*{format_symbol(sym)}")
        return " + ".join(parts)


@dataclass(frozen=True)
class DeltaCondition:
    """Kronecker condition m + n + shift = 0 in the rule's index variables.

    `shift` may be any rational; a non-integral shift can never fire, so
    off-lattice delta terms vanish silently.
    """

    shift: Fraction

    def fires(self, m: int, n: int) -> bool:
        return m + n + self.shift == 0


@dataclass(frozen=True)
class BracketTerm:
    """One summand poly(m,n) * [delta(m+n+c)] * Target(m+n+offset)."""

    coeff: Poly
    target: str
    offset: int = 0
    delta: Optional[DeltaCondition] = None


@dataclass(frozen=True)
class BracketRule:
    """All nonzero terms of [Left(m), Right(n)] for one ordered family pair."""

    left: str
    right: str
    terms: tuple[BracketTerm, ...]


@dataclass(frozen=True)
class Window:
    """Truncation bounds in doubled-index units.

    n_eq2 bounds the indices on which equations/checks are imposed, n_unk2
    the indices where unknowns/values are tracked, n_core2 the interior kept
    for reporting.  n_unk2 may be None and is then derived per degree from
    the invariant n_unk >= 2*n_eq + max|offset| + |degree|.
    """

    n_eq2: int
    n_core2: int
    n_unk2: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n_eq2 < 0 or self.n_core2 < 0:
            raise WindowError("window bounds must be nonnegative")
        if 2 * self.n_core2 > self.n_eq2:
            raise WindowError(
                f"n_core ({self.n_core2}/2) must not exceed n_eq/2 ({self.n_eq2}/4)"
            )

    @classmethod
    def displayed(cls, n_eq: int = 8, n_core: int = 3, n_unk: Optional[int] = None) -> "Window":
        return cls(2 * n_eq, 2 * n_core, None if n_unk is None else 2 * n_unk)

    def resolve_nunk2(self, spec: "AlgebraSpec", g2: int = 0) -> int:
        needed = 2 * self.n_eq2 + spec.max_offset2() + abs(g2)
        if self.n_unk2 is None:
            return needed
        if self.n_unk2 < needed:
            raise WindowError(
                f"n_unk2={self.n_unk2} too small: invariant requires at least {needed}"
            )
        return self.n_unk2


@dataclass(frozen=True)
class Violation:
    witness: tuple[BasisSymbol, ...]
    residual: Element
    message: str = ""

    def as_dict(self) -> dict:
        return {
            "witness": [format_symbol(s) for s in self.witness],
            "residual": repr(self.residual),
            "message": self.message,
        }


@dataclass(frozen=True)
class Report:
    check: str
    violations: tuple[Violation, ...]
    pairs_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "violations": [v.as_dict() for v in self.violations],
        }


@dataclass(frozen=True)
class AlgebraSpec:
    """A graded Lie algebra presented by families and bracket rules."""

    name: str
    families: tuple[Family, ...]
    rules: tuple[BracketRule, ...]
    params: Mapping[str, Fraction] = field(default_factory=dict, compare=False)
    _fam: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _pair: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _cache: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        for fam in self.families:
            if fam.name in self._fam:
                raise StructureError(f"duplicate family {fam.name}")
            if fam.name in ("m", "n"):
                raise StructureError("family names m and n are reserved")
            self._fam[fam.name] = fam
        for rule in self.rules:
            for name in (rule.left, rule.right):
                if name not in self._fam:
                    raise StructureError(f"rule references unknown family {name}")
                if self._fam[name].lattice == CENTRAL:
                    raise StructureError(
                        f"central family {name} cannot appear on the left of a rule"
                    )
            key = frozenset((rule.left, rule.right))
            if key in self._pair:
                raise StructureError(
                    f"duplicate rule for family pair ({rule.left}, {rule.right})"
                )
            self._pair[key] = rule
            for term in rule.terms:
                if term.target not in self._fam:
                    raise StructureError(f"rule targets unknown family {term.target}")

    def family(self, name: str) -> Family:
        try:
            return self._fam[name]
        except KeyError:
            raise StructureError(f"unknown family {name!r} in algebra {self.name}") from None

    def has_family(self, name: str) -> bool:
        return name in self._fam

    def rule_for(self, left: str, right: str) -> Optional[BracketRule]:
        return self._pair.get(frozenset((left, right)))

    def max_offset2(self) -> int:
        """Largest doubled-index shift any bracket term can apply."""
        worst = 0
        for rule in self.rules:
            hl = 1 if self._fam[rule.left].lattice == HALF else 0
            hr = 1 if self._fam[rule.right].lattice == HALF else 0
            for term in rule.terms:
                tf = self._fam[term.target]
                if tf.lattice == CENTRAL:
                    continue
                ht = 1 if tf.lattice == HALF else 0
                worst = max(worst, abs(2 * term.offset + ht - hl - hr))
        return worst

    def degree2(self, sym: BasisSymbol) -> int:
        fam = self.family(sym.family)
        if fam.lattice == CENTRAL:
            return 0
        assert sym.twice is not None
        return sym.twice + fam.shift2

    def rule_var(self, sym: BasisSymbol) -> int:
        """The integer value of the rule variable (m or n) for this symbol."""
        fam = self.family(sym.family)
        if fam.lattice == CENTRAL:
            raise StructureError(f"central symbol {sym.family} carries no index")
        assert sym.twice is not None
        if fam.lattice == HALF:
            return (sym.twice - 1) // 2
        return sym.twice // 2

    def symbol(self, family: str, displayed: Fraction | int | None = None) -> BasisSymbol:
        fam = self.family(family)
        if fam.lattice == CENTRAL:
            if displayed is not None:
                raise StructureError(f"central symbol {family} takes no index")
            return BasisSymbol(family, None)
        if displayed is None:
            raise StructureError(f"symbol of family {family} needs an index")
        twice = Fraction(displayed) * 2
        if twice.denominator != 1:
            raise StructureError(f"index {displayed} is not on a half-integer lattice")
        twice = int(twice)
        want = 1 if fam.lattice == HALF else 0
        if twice % 2 != want:
            raise StructureError(
                f"index {displayed} has the wrong parity for {fam.lattice} family {family}"
            )
        return BasisSymbol(family, twice)

    def basis_symbols(self, bound2: int, include_central: bool = True) -> Iterator[BasisSymbol]:
        """All basis symbols with |doubled index| <= bound2, in a fixed order."""
        for fam in self.families:
            if fam.lattice == CENTRAL:
                if include_central:
                    yield BasisSymbol(fam.name, None)
                continue
            parity = 0 if fam.lattice == INTEGER else 1
            for twice in range(-bound2, bound2 + 1):
                if twice % 2 == parity:
                    yield BasisSymbol(fam.name, twice)


def bracket_symbols(spec: AlgebraSpec, x: BasisSymbol, y: BasisSymbol) -> dict[BasisSymbol, Fraction]:
    """[x, y] for basis symbols, as a symbol->coefficient dict (memoized)."""
    key = (x, y)
    cached = spec._cache.get(key)
    if cached is not None:
        return cached
    fx = spec.family(x.family)
    fy = spec.family(y.family)
    out: dict[BasisSymbol, Fraction] = {}
    if fx.lattice != CENTRAL and fy.lattice != CENTRAL:
        rule = spec.rule_for(x.family, y.family)
        if rule is not None:
            if rule.left == x.family and (rule.right == y.family or rule.left == rule.right):
                sign, a, b = 1, x, y
            else:
                sign, a, b = -1, y, x
            mv = spec.rule_var(a)
            nv = spec.rule_var(b)
            for term in rule.terms:
                if term.delta is not None and not term.delta.fires(mv, nv):
                    continue
                coeff = term.coeff.evaluate(mv, nv) * sign
                if not coeff:
                    continue
                tf = spec.family(term.target)
                if tf.lattice == CENTRAL:
                    sym = BasisSymbol(term.target, None)
                else:
                    half = 1 if tf.lattice == HALF else 0
                    sym = BasisSymbol(term.target, 2 * (mv + nv + term.offset) + half)
                total = out.get(sym, Fraction(0)) + coeff
                if total:
                    out[sym] = total
                else:
                    out.pop(sym, None)
    spec._cache[key] = out
    return out


def _as_element(x: Element | BasisSymbol) -> Element:
    if isinstance(x, BasisSymbol):
        return Element.basis(x)
    return x


def bracket(spec: AlgebraSpec, x: Element | BasisSymbol, y: Element | BasisSymbol) -> Element:
    """Bilinear extension of the bracket rules to arbitrary elements."""
    x = _as_element(x)
    y = _as_element(y)
    acc: dict[BasisSymbol, Fraction] = {}
    for sx, cx in x.items():
        spec.family(sx.family)  # raises StructureError on unknown families
        for sy, cy in y.items():
            for sym, coeff in bracket_symbols(spec, sx, sy).items():
                total = acc.get(sym, Fraction(0)) + cx * cy * coeff
                if total:
                    acc[sym] = total
                else:
                    acc.pop(sym, None)
    return Element(acc)


def bracket_element_symbol(
    spec: AlgebraSpec, terms: Mapping[BasisSymbol, Fraction], z: BasisSymbol
) -> dict[BasisSymbol, Fraction]:
    """[sum terms, z] at the symbol level, avoiding Element wrappers in hot loops."""
    acc: dict[BasisSymbol, Fraction] = {}
    for sym, coeff in terms.items():
        for out, c in bracket_symbols(spec, sym, z).items():
            total = acc.get(out, Fraction(0)) + coeff * c
            if total:
                acc[out] = total
            else:
                acc.pop(out, None)
    return acc


def check_skew(spec: AlgebraSpec, window: Window) -> Report:
    """Verify [x,y] + [y,x] = 0 for all basis pairs within the window."""
    symbols = list(spec.basis_symbols(window.n_eq2))
    violations = []
    count = 0
    for i, x in enumerate(symbols):
        for y in symbols[i:]:
            count += 1
            acc = dict(bracket_symbols(spec, x, y))
            for sym, coeff in bracket_symbols(spec, y, x).items():
                total = acc.get(sym, Fraction(0)) + coeff
                if total:
                    acc[sym] = total
                else:
                    acc.pop(sym, None)
            if acc:
                violations.append(Violation((x, y), Element(acc), "skew-symmetry broken"))
    return Report("skew", tuple(violations), count)


def jacobi_residual(spec: AlgebraSpec, x: BasisSymbol, y: BasisSymbol, z: BasisSymbol) -> Element:
    """J(x,y,z) = [[x,y],z] + [[y,z],x] + [[z,x],y]."""
    acc: dict[BasisSymbol, Fraction] = {}
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        inner = bracket_symbols(spec, a, b)
        for sym, coeff in bracket_element_symbol(spec, inner, c).items():
            total = acc.get(sym, Fraction(0)) + coeff
            if total:
                acc[sym] = total
            else:
                acc.pop(sym, None)
    return Element(acc)


def check_jacobi(spec: AlgebraSpec, window: Window) -> Report:
    """Jacobi residual over all basis triples within the window.

    Given bilinearity and antisymmetry, residuals with a repeated symbol
    vanish identically, so distinct triples suffice.
    """
    symbols = list(spec.basis_symbols(window.n_eq2))
    violations = []
    count = 0
    for x, y, z in itertools.combinations(symbols, 3):
        count += 1
        residual = jacobi_residual(spec, x, y, z)
        if residual:
            violations.append(Violation((x, y, z), residual, "Jacobi identity broken"))
    return Report("jacobi", tuple(violations), count)


def check_grading(spec: AlgebraSpec, window: Window) -> Report:
    """Degree additivity: deg([x,y]) = deg(x) + deg(y) for every nonzero term.

    Central targets carry degree 0, so they require the source degrees to
    sum to zero.
    """
    symbols = list(spec.basis_symbols(window.n_eq2, include_central=False))
    violations = []
    count = 0
    for i, x in enumerate(symbols):
        for y in symbols[i:]:
            count += 1
            want = spec.degree2(x) + spec.degree2(y)
            for sym, coeff in bracket_symbols(spec, x, y).items():
                if spec.degree2(sym) != want:
                    violations.append(
                        Violation(
                            (x, y),
                            Element({sym: coeff}),
                            f"term degree {format_index2(spec.degree2(sym))} != "
                            f"source degree sum {format_index2(want)}",
                        )
                    )
    return Report("grading", tuple(violations), count)
