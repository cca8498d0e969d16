"""Text specifications of groups, shared by the CLI and the corpus.

Grammar::

    cyclic:N            cyclic group of order N
    perm:CYC;CYC;...    group generated by permutations in cycle notation,
                        e.g. perm:(1 2 3);(1 2)
    cayley:PATH         CSV file holding a Cayley table of indices
    gdq:D,Q             G(D,Q) = F_Q^D x| F_Q^*
    gq:Q                G(Q) = G(1,Q)
    diag:D,Q            F_Q^D x| (diagonal matrices)
    product:A*B*...     direct product, folded left to right
    sym:N  alt:N  dihedral:N  q8  burnside  isaacs
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import reduce
from pathlib import Path

from fir import constructions as C
from fir.exceptions import SpecParseError
from fir.groups import FiniteGroup, from_cayley, from_permutations

_NULLARY = {"burnside", "isaacs", "q8"}
_ONE_INT = {"cyclic", "gq", "sym", "alt", "dihedral"}
_TWO_INT = {"gdq", "diag"}


@dataclass(frozen=True)
class GroupSpec:
    tag: str
    args: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        text = text.strip()
        tag, sep, rest = text.partition(":")
        tag = tag.strip().lower()
        if tag in _NULLARY:
            if sep:
                raise SpecParseError(f"{tag!r} takes no arguments")
            return cls(tag)
        if not sep:
            raise SpecParseError(f"unknown or incomplete group spec {text!r}")
        if tag in _ONE_INT:
            return cls(tag, (_int(rest, text),))
        if tag in _TWO_INT:
            parts = rest.split(",")
            if len(parts) != 2:
                raise SpecParseError(f"{tag} expects two integers, got {rest!r}")
            return cls(tag, tuple(_int(x, text) for x in parts))
        if tag == "perm":
            gens = tuple(g.strip() for g in rest.split(";") if g.strip())
            if not gens:
                raise SpecParseError("perm needs at least one generator")
            return cls(tag, gens)
        if tag == "cayley":
            if not rest.strip():
                raise SpecParseError("cayley needs a file path")
            return cls(tag, (rest.strip(),))
        if tag == "product":
            factors: list[GroupSpec] = []
            for part in rest.split("*"):
                sub = cls.parse(part)
                factors.extend(sub.args if sub.tag == "product" else [sub])
            if len(factors) < 2:
                raise SpecParseError("product needs at least two factors")
            return cls(tag, tuple(factors))
        raise SpecParseError(f"unknown group constructor {tag!r}")

    def __str__(self) -> str:
        if self.tag in _NULLARY:
            return self.tag
        if self.tag == "perm":
            return "perm:" + ";".join(self.args)
        if self.tag == "product":
            return "product:" + "*".join(str(f) for f in self.args)
        return f"{self.tag}:" + ",".join(str(a) for a in self.args)

    def build(self) -> FiniteGroup:
        tag, args = self.tag, self.args
        if tag == "cyclic":
            G = C.cyclic(args[0])
        elif tag == "gq":
            G = C.affine_line_group(args[0])
        elif tag == "gdq":
            G = C.affine_scalar_group(*args)
        elif tag == "diag":
            G = C.diagonal_affine_group(*args)
        elif tag == "sym":
            G = C.symmetric(args[0])
        elif tag == "alt":
            G = C.alternating(args[0])
        elif tag == "dihedral":
            G = C.dihedral(args[0])
        elif tag == "q8":
            G = C.quaternion()
        elif tag == "burnside":
            G = C.burnside_example()
        elif tag == "isaacs":
            G = C.isaacs_example()
        elif tag == "perm":
            try:
                G = from_permutations(list(args))
            except ValueError as exc:
                raise SpecParseError(str(exc)) from exc
        elif tag == "cayley":
            G = from_cayley(read_cayley_csv(args[0]))
        elif tag == "product":
            G = reduce(C.direct_product, (f.build() for f in args))
        else:  # pragma: no cover - parse rejects unknown tags
            raise SpecParseError(tag)
        G.name = str(self)
        return G


def _int(text: str, whole: str) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise SpecParseError(f"expected an integer in {whole!r}, got {text!r}") from None
    if value < 1:
        raise SpecParseError(f"expected a positive integer in {whole!r}")
    return value


def read_cayley_csv(path: str | Path) -> list[list[int]]:
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    try:
        return [[int(c) for c in row] for row in rows]
    except ValueError as exc:
        raise SpecParseError(f"{path}: non-integer entry ({exc})") from None


def build_group(text: str) -> FiniteGroup:
    return GroupSpec.parse(text).build()
