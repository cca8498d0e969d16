"""The builtin group corpus and the cross-module invariant sweep."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from fir.characters import CharacterTable, dixon_table, faithful_irreducible_exists, kernel_of, orthogonality_holds
from fir.criteria import verdict
from fir.groups import FiniteGroup, is_normal
from fir.groupspec import GroupSpec

CORPUS: tuple[str, ...] = (
    "cyclic:1",
    *(f"cyclic:{n}" for n in range(2, 13)),
    "product:cyclic:2*cyclic:2",
    "product:cyclic:3*cyclic:3",
    "sym:3",
    "sym:4",
    "alt:4",
    "alt:5",
    *(f"dihedral:{n}" for n in range(3, 7)),
    "q8",
    "burnside",
    "isaacs",
    *(f"gdq:{d},{q}" for q in (2, 3, 4, 5) for d in (1, 2)),
    "gdq:3,2",
    "gdq:3,3",
    "diag:2,3",
    "product:cyclic:2*sym:3",
    "product:cyclic:6*sym:3",
    "product:q8*cyclic:3",
    "product:alt:5*cyclic:2",
)

# direct products whose factors are themselves in the corpus
PRODUCTS: tuple[str, ...] = (
    "product:cyclic:2*cyclic:2",
    "product:cyclic:3*cyclic:3",
    "product:cyclic:2*sym:3",
    "product:cyclic:6*sym:3",
    "product:q8*cyclic:3",
    "product:alt:5*cyclic:2",
    "diag:2,3",
)

CHAR_PRIMES = (2, 3, 5, 7)


def corpus() -> list[GroupSpec]:
    return [GroupSpec.parse(s) for s in CORPUS]


@dataclass
class GroupResult:
    spec: str
    order: int
    pi: list[int]
    verdict: bool
    checks: dict[str, bool] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    degrees: list[int] | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks[name] = bool(passed)
        if not passed:
            self.violations.append(f"{self.spec}: {name} violated{': ' + detail if detail else ''}")


def oracle_consistency(G: FiniteGroup, table: CharacterTable) -> dict[str, bool]:
    """Exactness checks of a character table that do not depend on the criteria."""
    cd = table.class_data
    kernels = [kernel_of(i, table, G) for i in range(len(table))]
    all_kernels = np.logical_and.reduce([K.mask for K in kernels])
    return {
        "rows_equal_classes": len(table) == len(cd),
        "degree_squares_sum_to_order": sum(d * d for d in table.degrees) == G.n,
        "row_orthogonality": orthogonality_holds(table),
        "kernels_normal": all(is_normal(G, K) for K in kernels),
        "kernels_intersect_trivially": int(all_kernels.sum()) == 1,
        "class_counts": cd.check_counts(),
        "trivial_row_first": table.degrees[0] == 1 and table.kernel_orders[0] == G.n,
    }


def check_group(spec: str | GroupSpec, with_oracle: bool = True) -> GroupResult:
    start = time.perf_counter()
    parsed = spec if isinstance(spec, GroupSpec) else GroupSpec.parse(spec)
    G = parsed.build()
    base = verdict(G, 0, group_spec=str(parsed))
    res = GroupResult(str(parsed), G.n, base.primes_pi, base.verdict)

    res.record("criteria_agree", base.criteria_agree,
               f"gaschuetz={base.gaschuetz} weisner={base.weisner} akizuki={base.akizuki}")
    res.record("char0_equals_gaschuetz", base.verdict == base.gaschuetz)
    if base.sufficient_flags["burnside"]:
        res.record("burnside_implies_verdict", base.verdict)
    if base.sufficient_flags["kochendorffer"]:
        res.record("kochendorffer_implies_verdict", base.verdict)
    if base.nilpotent_case["is_nilpotent"]:
        res.record("nilpotent_center_cyclic_iff_verdict",
                   base.nilpotent_case["center_cyclic"] == base.verdict)
    for p in CHAR_PRIMES:
        vp = verdict(G, p).verdict
        res.record(f"char_{p}_monotone", vp == (base.verdict and p not in base.primes_pi),
                   f"verdict({p})={vp}")

    if with_oracle:
        table = dixon_table(G)
        res.degrees = list(table.degrees)
        faithful, _ = faithful_irreducible_exists(G, table)
        res.record("oracle_agrees", faithful == base.verdict, f"oracle={faithful} criteria={base.verdict}")
        for name, passed in oracle_consistency(G, table).items():
            res.record(f"oracle_{name}", passed)
    res.seconds = time.perf_counter() - start
    return res


def _check_one(args: tuple[str, bool]) -> GroupResult:
    return check_group(*args)


def run_corpus(with_oracle: bool = True, jobs: int = 1, specs: tuple[str, ...] = CORPUS) -> list[GroupResult]:
    """Check every group; results are sorted by spec text regardless of ``jobs``."""
    work = [(s, with_oracle) for s in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_one, work))
    else:
        results = [_check_one(w) for w in work]
    return sorted(results, key=lambda r: r.spec)


def degree_products(a: list[int], b: list[int]) -> list[int]:
    return sorted(x * y for x in a for y in b)


def tensor_check(spec: str) -> tuple[list[int], list[int]]:
    """Degree multiset of a product group vs pairwise products of its factors' degrees.

    For ``diag:d,q`` the factors are d copies of ``gq:q``.
    """
    parsed = GroupSpec.parse(spec)
    if parsed.tag == "diag":
        d, q = parsed.args
        factors = [GroupSpec("gq", (q,))] * d
    elif parsed.tag == "product":
        factors = list(parsed.args)
    else:
        raise ValueError(f"{spec} is not a direct product")
    expected = [1]
    for f in factors:
        expected = degree_products(expected, dixon_table(f.build()).degrees)
    actual = sorted(dixon_table(parsed.build()).degrees)
    return actual, expected
