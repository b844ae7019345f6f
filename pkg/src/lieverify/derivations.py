"""Exact solver for graded delta-derivations.

A linear map ``phi`` is a delta-derivation when for all x, y::

    phi([x, y]) = delta * ([phi(x), y] + [x, phi(y)])

(``delta = 1`` gives ordinary derivations, ``delta = 1/2`` the
half-derivations this package is mostly used for.)  The solver works one
graded degree at a time: unknowns are the matrix entries of ``phi``
restricted to a finite index window, the derivation identity over a
smaller window of basis pairs yields an exact linear system, and the
nullspace is projected onto an interior sub-window to discard window
boundary artifacts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from . import linalg
from .core import (
    CENTRAL,
    AlgebraSpec,
    BasisSymbol,
    Element,
    Window,
    WindowError,
    bracket,
    bracket_symbols,
    format_index2,
    format_symbol,
)

Unknown = tuple[BasisSymbol, BasisSymbol]  # (source, target)


def derivation_residual(
    spec: AlgebraSpec,
    phi: Callable[[BasisSymbol], Element] | Mapping[BasisSymbol, Element],
    x: BasisSymbol,
    y: BasisSymbol,
    delta: Fraction = Fraction(1, 2),
) -> Element:
    """phi([x,y]) - delta*([phi(x),y] + [x,phi(y)]) as an Element."""
    if not callable(phi):
        table = phi
        phi = lambda s: table.get(s, Element())
    lhs = Element()
    for sym, coeff in bracket_symbols(spec, x, y).items():
        lhs = lhs + phi(sym).scale(coeff)
    rhs = bracket(spec, phi(x), y) + bracket(spec, x, phi(y))
    return lhs - rhs.scale(delta)


def _source_symbols(spec: AlgebraSpec, bound2: int) -> list[BasisSymbol]:
    return list(spec.basis_symbols(bound2, include_central=True))


def _targets_for(spec: AlgebraSpec, source: BasisSymbol, g2: int, n_unk2: int) -> list[BasisSymbol]:
    """All window symbols whose degree exceeds deg(source) by g2."""
    deg2 = spec.degree2(source) + g2
    out = []
    for fam in spec.families:
        if fam.lattice == CENTRAL:
            if deg2 == 0:
                out.append(BasisSymbol(fam.name, None))
            continue
        twice = deg2 - fam.shift2
        if twice % 2 != (1 if fam.lattice == "half" else 0):
            continue
        if abs(twice) <= n_unk2:
            out.append(BasisSymbol(fam.name, twice))
    return out


def build_unknowns(spec: AlgebraSpec, g2: int, window: Window) -> list[Unknown]:
    n_unk2 = window.resolve_nunk2(spec, g2)
    unknowns: list[Unknown] = []
    for src in _source_symbols(spec, n_unk2):
        for tgt in _targets_for(spec, src, g2, n_unk2):
            unknowns.append((src, tgt))
    return unknowns


def assemble_system(
    spec: AlgebraSpec,
    g2: int,
    window: Window,
    delta: Fraction = Fraction(1, 2),
) -> tuple[list[Unknown], list[linalg.SparseRow]]:
    """Unknown list plus sparse residual rows over those unknowns."""
    n_unk2 = window.resolve_nunk2(spec, g2)
    unknowns = build_unknowns(spec, g2, window)
    col = {u: i for i, u in enumerate(unknowns)}
    by_source: dict[BasisSymbol, list[tuple[int, BasisSymbol]]] = {}
    for i, (src, tgt) in enumerate(unknowns):
        by_source.setdefault(src, []).append((i, tgt))

    symbols = _source_symbols(spec, window.n_eq2)
    rows: list[linalg.SparseRow] = []
    for ix, x in enumerate(symbols):
        for y in symbols[ix + 1 :]:
            if x.twice is None and y.twice is None:
                continue  # central-central rows vanish identically
            # residual coefficients, grouped by output symbol
            acc: dict[BasisSymbol, linalg.SparseRow] = {}

            def add(out: BasisSymbol, column: int, value: Fraction) -> None:
                row = acc.setdefault(out, {})
                row[column] = row.get(column, Fraction(0)) + value

            for mid, coeff in bracket_symbols(spec, x, y).items():
                if mid.twice is not None and abs(mid.twice) > n_unk2:
                    raise WindowError(
                        f"bracket output {format_symbol(mid)} falls outside the "
                        f"unknown window; increase nunk"
                    )
                # sources with no degree-matched targets have zero image
                for column, tgt in by_source.get(mid, ()):
                    add(tgt, column, coeff)
            for left, other, sign in ((x, y, 1), (y, x, -1)):
                # [phi(left), other]; sign restores [other, phi(left)] order
                for column, tgt in by_source.get(left, ()):  # centrals may be absent
                    for out, coeff in bracket_symbols(spec, tgt, other).items():
                        add(out, column, -delta * sign * coeff)
            for row in acc.values():
                cleaned = {c: v for c, v in row.items() if v}
                if cleaned:
                    rows.append(cleaned)
    assert all(c in range(len(col)) for row in rows for c in row)
    return unknowns, rows


@dataclass
class Generator:
    description: str
    coefficients: dict[Unknown, Fraction]

    def as_dict(self) -> dict:
        coeffs = [
            {
                "source": format_symbol(src),
                "target": format_symbol(tgt),
                "value": str(val),
            }
            for (src, tgt), val in sorted(
                self.coefficients.items(), key=lambda kv: _unknown_key(kv[0])
            )
        ]
        return {"description": self.description, "coefficients": coeffs}


@dataclass
class DegreeResult:
    degree2: int
    interior_dim: int
    generators: list[Generator]
    residual_checked: bool

    def as_dict(self) -> dict:
        return {
            "degree": format_index2(self.degree2),
            "interior_dim": self.interior_dim,
            "generators": [g.as_dict() for g in self.generators],
            "residual_checked": self.residual_checked,
        }


@dataclass
class DerivationReport:
    algebra: str
    params: dict[str, Fraction]
    window: Window
    delta: Fraction
    degrees: list[DegreeResult] = field(default_factory=list)

    @property
    def dims(self) -> dict[int, int]:
        return {d.degree2: d.interior_dim for d in self.degrees}

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "delta": str(self.delta),
            "window": {
                "neq": format_index2(self.window.n_eq2),
                "nunk": format_index2(self.window.n_unk2) if self.window.n_unk2 is not None else None,
                "ncore": format_index2(self.window.n_core2),
            },
            "degrees": [d.as_dict() for d in self.degrees],
            "dims": {format_index2(d.degree2): d.interior_dim for d in self.degrees},
        }


def _unknown_key(u: Unknown):
    src, tgt = u
    return (
        src.family,
        src.twice if src.twice is not None else 0,
        tgt.family,
        tgt.twice if tgt.twice is not None else 0,
    )


def _is_core(spec: AlgebraSpec, u: Unknown, n_core2: int) -> bool:
    src, _ = u
    return src.twice is None or abs(src.twice) <= n_core2


def _interior_basis(
    unknowns: Sequence[Unknown],
    vectors: Sequence[linalg.SparseRow],
    core_cols: Sequence[int],
) -> list[linalg.SparseRow]:
    """Select nullspace vectors with independent interior projections.

    Gaussian elimination runs on the projections while the same row
    operations are mirrored onto the full vectors, so each returned
    vector is still an exact solution of the full system.
    """
    core_index = {c: i for i, c in enumerate(core_cols)}
    work = []  # (projection, full vector)
    for vec in vectors:
        proj = {core_index[c]: v for c, v in vec.items() if c in core_index}
        work.append((proj, dict(vec)))

    basis: list[tuple[int, linalg.SparseRow, linalg.SparseRow]] = []  # (pivot, proj, full)
    for proj, full in work:
        for pcol, prow, pfull in basis:
            factor = proj.get(pcol)
            if factor:
                for c, v in prow.items():
                    nv = proj.get(c, Fraction(0)) - factor * v
                    if nv:
                        proj[c] = nv
                    else:
                        proj.pop(c, None)
                for c, v in pfull.items():
                    nv = full.get(c, Fraction(0)) - factor * v
                    if nv:
                        full[c] = nv
                    else:
                        full.pop(c, None)
        if not proj:
            continue
        pivot = min(proj)
        inv = Fraction(1) / proj[pivot]
        proj = {c: v * inv for c, v in proj.items()}
        full = {c: v * inv for c, v in full.items()}
        basis.append((pivot, proj, full))

    # back-eliminate for a deterministic reduced form
    basis.sort(key=lambda t: t[0])
    for i in range(len(basis) - 1, -1, -1):
        pivot, prow, pfull = basis[i]
        for j in range(i):
            _, qrow, qfull = basis[j]
            factor = qrow.get(pivot)
            if not factor:
                continue
            for c, v in prow.items():
                nv = qrow.get(c, Fraction(0)) - factor * v
                if nv:
                    qrow[c] = nv
                else:
                    qrow.pop(c, None)
            for c, v in pfull.items():
                nv = qfull.get(c, Fraction(0)) - factor * v
                if nv:
                    qfull[c] = nv
                else:
                    qfull.pop(c, None)
    return [full for _, _, full in basis]


def _describe(
    spec: AlgebraSpec, unknowns: Sequence[Unknown], coeffs: dict[Unknown, Fraction]
) -> str:
    """Human-readable summary of a derivation restricted to the interior."""
    if not coeffs:
        return "zero map"
    # identity check: every entry maps a symbol to itself with one value
    if all(src == tgt for src, tgt in coeffs):
        values = set(coeffs.values())
        if len(values) == 1:
            lam = values.pop()
            return "identity map" if lam == 1 else f"({lam})*identity"
    # uniform family-shift components, e.g. L(n) -> M(n+1)
    groups: dict[tuple[str, str, Optional[int]], set[Fraction]] = {}
    for (src, tgt), val in coeffs.items():
        off2 = None
        if src.twice is not None and tgt.twice is not None:
            off2 = tgt.twice - src.twice
        groups.setdefault((src.family, tgt.family, off2), set()).add(val)
    parts = []
    for (sf, tf, off2), values in sorted(
        groups.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or 0)
    ):
        if len(values) != 1:
            return "structured map"
        val = next(iter(values))
        prefix = "" if val == 1 else f"({val})*"
        if off2 is None:
            parts.append(f"{sf} -> {prefix}{tf}")
        else:
            shift = "" if off2 == 0 else (
                "+" + format_index2(off2) if off2 > 0 else "-" + format_index2(-off2)
            )
            parts.append(f"{sf}(n) -> {prefix}{tf}(n{shift})")
    return "; ".join(parts)


def solve_degree(
    spec: AlgebraSpec,
    g2: int,
    window: Window,
    delta: Fraction = Fraction(1, 2),
    verify_residual: bool = True,
) -> DegreeResult:
    unknowns, rows = assemble_system(spec, g2, window, delta)
    vectors = linalg.sparse_nullspace(rows, len(unknowns))
    core_cols = [i for i, u in enumerate(unknowns) if _is_core(spec, u, window.n_core2)]
    basis = _interior_basis(unknowns, vectors, core_cols)

    generators = []
    checked = True
    symbols = _source_symbols(spec, window.n_eq2)
    for full in basis:
        table = {}
        for c, v in full.items():
            src, tgt = unknowns[c]
            table.setdefault(src, Element())
            table[src] = table[src] + Element({tgt: v})
        if verify_residual:
            for ix, x in enumerate(symbols):
                for y in symbols[ix + 1 :]:
                    if derivation_residual(spec, table, x, y, delta):
                        checked = False
        interior = {
            unknowns[c]: v
            for c, v in full.items()
            if _is_core(spec, unknowns[c], window.n_core2)
        }
        generators.append(Generator(_describe(spec, unknowns, interior), interior))
    return DegreeResult(g2, len(basis), generators, checked and verify_residual)


def solve_derivations(
    spec: AlgebraSpec,
    degrees2: Sequence[int],
    window: Window,
    delta: Fraction = Fraction(1, 2),
    verify_residual: bool = True,
) -> DerivationReport:
    report = DerivationReport(spec.name, dict(spec.params), window, delta)
    for g2 in sorted(set(degrees2)):
        report.degrees.append(solve_degree(spec, g2, window, delta, verify_residual))
    return report
