"""Named group catalog and group/series specification parsing.

Catalog names resolve to fixed generator sets so that every run of the tool
sees identical elements, ids, and labels for the same name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .permgroup import Group, ParseError, Permutation, generate_group, parse_permutation


@dataclass(frozen=True)
class GroupSpec:
    """Either a resolved catalog entry or a raw degree + generator list."""

    name: str | None
    degree: int
    generators: tuple[str, ...]


def _cycle_n(n: int) -> str:
    return "(" + " ".join(str(t) for t in range(1, n + 1)) + ")"


def _dihedral_reflection(n: int) -> str:
    pairs = [(t, n + 2 - t) for t in range(2, n // 2 + 2) if t < n + 2 - t]
    return "".join(f"({a} {b})" for a, b in pairs)


# Q8: left multiplication on the unit quaternions 1,-1,i,-i,j,-j,k,-k.
_Q8_GENS = ("(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)")
# SL(2,3): natural action on the 8 nonzero vectors of F_3^2.
_SL23_GENS = ("(3 5 7)(4 8 6)", "(1 3 2 4)(5 7 8 6)")


def resolve_catalog(name: str) -> GroupSpec:
    """Generator set of a named group; raises ParseError on unknown names."""
    key = name.strip().upper()
    if key == "Q8":
        return GroupSpec("Q8", 8, _Q8_GENS)
    if key == "SL23":
        return GroupSpec("SL23", 8, _SL23_GENS)
    if key == "V4":
        return GroupSpec("V4", 4, ("(1 2)", "(3 4)"))
    if key == "E8":
        return GroupSpec("E8", 6, ("(1 2)", "(3 4)", "(5 6)"))
    m = re.fullmatch(r"([CDSA])(\d+)", key)
    if not m:
        raise ParseError(f"unknown catalog name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        if n < 1:
            raise ParseError(f"C{n}: parameter out of supported range")
        return GroupSpec(f"C{n}", max(n, 1), (_cycle_n(n) if n > 1 else "()",))
    if kind == "D":
        if n < 3:
            raise ParseError(f"D{n}: dihedral parameter must be at least 3")
        return GroupSpec(f"D{n}", n, (_cycle_n(n), _dihedral_reflection(n)))
    if kind == "S":
        if n < 1:
            raise ParseError(f"S{n}: parameter out of supported range")
        if n == 1:
            return GroupSpec("S1", 1, ("()",))
        if n == 2:
            return GroupSpec("S2", 2, ("(1 2)",))
        return GroupSpec(f"S{n}", n, ("(1 2)", _cycle_n(n)))
    if n < 3:
        raise ParseError(f"A{n}: alternating parameter must be at least 3")
    if n == 3:
        return GroupSpec("A3", 3, ("(1 2 3)",))
    second = _cycle_n(n) if n % 2 == 1 else \
        "(" + " ".join(str(t) for t in range(2, n + 1)) + ")"
    return GroupSpec(f"A{n}", n, ("(1 2 3)", second))


def parse_group_spec(text: str) -> GroupSpec:
    """Raw format: ``degree=<n>; gens=<perm>,<perm>,...`` with cycle notation."""
    m = re.fullmatch(r"\s*degree\s*=\s*(\d+)\s*;\s*gens\s*=\s*(.*?)\s*", text)
    if not m:
        raise ParseError(f"bad group spec {text!r} (want 'degree=N; gens=...')")
    degree = int(m.group(1))
    if degree < 1:
        raise ParseError("degree must be positive")
    gens = tuple(split_outside_parens(m.group(2), ","))
    if not gens:
        gens = ("()",)
    return GroupSpec(None, degree, gens)


def split_outside_parens(text: str, sep: str) -> list[str]:
    """Split on a separator, ignoring occurrences inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch == sep and depth == 0:
            part = "".join(cur).strip()
            if part:
                parts.append(part)
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        parts.append(tail)
    return parts


def split_perm_tokens(term: str) -> list[str]:
    """Whitespace-separated permutation tokens; spaces inside parens don't split."""
    tokens, depth, cur = [], 0, []
    for ch in term:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch.isspace() and depth == 0:
            if cur:
                tokens.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        tokens.append("".join(cur))
    return tokens


def parse_series_spec(text: str, degree: int) -> list[list[Permutation]]:
    """Comma-separated subgroup specs, each a whitespace-separated generator list."""
    terms = []
    for part in split_outside_parens(text, ","):
        gens = [parse_permutation(tok, degree) for tok in split_perm_tokens(part)]
        if not gens:
            raise ParseError(f"empty series term in {text!r}")
        terms.append(gens)
    if not terms:
        raise ParseError("empty series specification")
    return terms


def build_group(spec: GroupSpec, max_order: int) -> Group:
    gens = [parse_permutation(g, spec.degree) for g in spec.generators]
    return generate_group([g for g in gens if not g.is_identity()],
                          spec.degree, max_order=max_order)
