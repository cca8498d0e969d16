"""Analysis reports and their JSON / text renderings."""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass

from fir.characters import CharacterTable, dixon_table, faithful_irreducible_exists
from fir.criteria import FINITE_CASE_NOTE, CriterionReport, verdict
from fir.groups import FiniteGroup, center, minimal_normal_subgroups
from fir.groupspec import GroupSpec


@dataclass
class OracleBlock:
    degrees: list[int]
    faithful: bool
    witness_kernel_order: int  # smallest kernel order over all irreducible characters

    @classmethod
    def from_table(cls, G: FiniteGroup, table: CharacterTable) -> "OracleBlock":
        faithful, _ = faithful_irreducible_exists(G, table)
        return cls(list(table.degrees), faithful, min(table.kernel_orders))


@dataclass
class AnalysisReport:
    group: str
    order: int
    minimal_normal_orders: list[int]
    center_order: int
    criteria: CriterionReport
    oracle: OracleBlock | None
    timing_ms: float | None

    @property
    def verdict(self) -> bool:
        return self.criteria.verdict

    @property
    def consistent(self) -> bool:
        """Oracle agrees with the characteristic-0 criteria (vacuous without an oracle)."""
        return self.oracle is None or self.oracle.faithful == self.criteria.gaschuetz

    def to_dict(self) -> dict:
        c = self.criteria
        return {
            "group": self.group,
            "order": self.order,
            "pi": list(c.primes_pi),
            "minimal_normal_orders": list(self.minimal_normal_orders),
            "criteria": {
                "gaschuetz": c.gaschuetz,
                "weisner": c.weisner,
                "akizuki": c.akizuki,
                "verdict": c.verdict,
                "char": c.characteristic,
            },
            "sufficient": {
                "burnside": c.sufficient_flags["burnside"],
                "kochendorffer": c.sufficient_flags["kochendorffer"],
            },
            "nilpotent": {
                "is_nilpotent": c.nilpotent_case["is_nilpotent"],
                "center_cyclic": c.nilpotent_case["center_cyclic"],
            },
            "oracle": None if self.oracle is None else {
                "degrees": self.oracle.degrees,
                "faithful": self.oracle.faithful,
                "witness_kernel_order": self.oracle.witness_kernel_order,
            },
            "timing_ms": self.timing_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        c = self.criteria
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        lines = [
            f"group            {self.group}",
            f"order            {self.order}",
            f"center order     {self.center_order}",
            f"minimal normals  {self.minimal_normal_orders}",
            f"Pi(G)            {c.primes_pi}",
        ]
        for p, pc in c.per_prime.items():
            comps = ", ".join(f"r={r} g={g} s={s}" for r, g, s in pc.components)
            lines.append(
                f"  T_{p}: dim {pc.dim}; cyclic {yn(pc.gaschuetz)} (generator {pc.generator}); "
                f"hyperplane {yn(pc.weisner)} (functional {pc.functional}); s*g<=r {yn(pc.akizuki)} [{comps}]"
            )
        lines += [
            f"gaschuetz        {yn(c.gaschuetz)}",
            f"weisner          {yn(c.weisner)}",
            f"akizuki          {yn(c.akizuki)}",
            f"burnside suff.   {yn(c.sufficient_flags['burnside'])}",
            f"kochendorffer    {yn(c.sufficient_flags['kochendorffer'])}",
            f"nilpotent        {yn(c.nilpotent_case['is_nilpotent'])}"
            f" (center cyclic: {yn(c.nilpotent_case['center_cyclic'])})",
        ]
        if self.oracle is not None:
            degs = ", ".join(f"{d}^{k}" if k > 1 else str(d) for d, k in sorted(Counter(self.oracle.degrees).items()))
            lines.append(f"oracle           degrees [{degs}]; faithful irreducible {yn(self.oracle.faithful)}")
        lines.append(f"note             {FINITE_CASE_NOTE}")
        lines.append(
            f"VERDICT          faithful irreducible representation in characteristic "
            f"{c.characteristic}: {yn(c.verdict)}"
        )
        if self.timing_ms is not None:
            lines.append(f"time             {self.timing_ms:.1f} ms")
        return "\n".join(lines)


def analyze(spec: str | GroupSpec, characteristic: int = 0, oracle: bool = False, timing: bool = False) -> AnalysisReport:
    start = time.perf_counter()
    parsed = spec if isinstance(spec, GroupSpec) else GroupSpec.parse(spec)
    G = parsed.build()
    crit = verdict(G, characteristic, group_spec=str(parsed))
    block = OracleBlock.from_table(G, dixon_table(G)) if oracle else None
    elapsed = (time.perf_counter() - start) * 1000.0
    return AnalysisReport(
        group=str(parsed),
        order=G.n,
        minimal_normal_orders=[N.order for N in minimal_normal_subgroups(G)],
        center_order=center(G).order,
        criteria=crit,
        oracle=block,
        timing_ms=round(elapsed, 3) if timing else None,
    )
