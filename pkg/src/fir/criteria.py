"""Criteria for a finite group to have a faithful irreducible representation.

For a finite group G and a field K of characteristic c, G has a faithful
irreducible representation over K exactly when c is not in Pi(G) and, for
each p in Pi(G), some hyperplane of T(G)_p has trivial core in G. The
classical characteristic-zero criteria (Gaschuetz: T(G)_p cyclic; Weisner:
a hyperplane with trivial core; Akizuki: s*g <= r) are evaluated
separately per prime so that their agreement can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fir.exceptions import SearchCapExceeded
from fir.groups import (
    FiniteGroup,
    center,
    is_cyclic_group,
    is_nilpotent,
    minimal_normal_subgroups,
    prime_factors,
    sylow,
)
from fir.linalg import is_prime
from fir.modrep import decompose, is_cyclic_spin, weisner_hyperplane_exists
from fir.socle import SocleReport, socle_report

FINITE_CASE_NOTE = (
    "finite group: the socle is essential (every non-trivial normal subgroup "
    "contains a minimal one) and there are no infinite minimal normal p-groups, "
    "so the verdict needs only: characteristic not in Pi(G), and for each p in "
    "Pi(G) a hyperplane of T(G)_p with trivial core"
)


@dataclass
class PrimeCheck:
    p: int
    dim: int
    gaschuetz: bool
    weisner: bool
    akizuki: bool
    generator: list[int] | None = None  # cyclic generator of T(G)_p, if any
    functional: list[int] | None = None  # hyperplane with trivial core, if any
    components: list[tuple[int, int, int]] = field(default_factory=list)  # (r, g, s)
    gaschuetz_method: str = "spin"

    @property
    def agree(self) -> bool:
        return self.gaschuetz == self.weisner == self.akizuki


@dataclass
class CriterionReport:
    group_spec: str
    characteristic: int
    primes_pi: list[int]
    per_prime: dict[int, PrimeCheck]
    verdict: bool
    sufficient_flags: dict[str, bool]
    nilpotent_case: dict[str, bool] | None

    @property
    def gaschuetz(self) -> bool:
        return all(c.gaschuetz for c in self.per_prime.values())

    @property
    def weisner(self) -> bool:
        return all(c.weisner for c in self.per_prime.values())

    @property
    def akizuki(self) -> bool:
        return all(c.akizuki for c in self.per_prime.values())

    @property
    def criteria_agree(self) -> bool:
        return all(c.agree for c in self.per_prime.values())


def prime_checks(G: FiniteGroup, report: SocleReport | None = None, cap: int | None = None) -> dict[int, PrimeCheck]:
    report = report or socle_report(G)
    checks = {}
    for p, tp in report.t_parts.items():
        M = tp.module
        summary = decompose(M, cap)
        aki = all(c.cyclic for c in summary.components)
        try:
            gas, gen = is_cyclic_spin(M, cap)
            method = "spin"
        except SearchCapExceeded:
            gas, gen, method = aki, None, "akizuki"
        wei, lam = weisner_hyperplane_exists(M, cap)
        checks[p] = PrimeCheck(
            p=p,
            dim=M.dim,
            gaschuetz=gas,
            weisner=wei,
            akizuki=aki,
            generator=None if gen is None else [int(x) for x in gen],
            functional=None if lam is None else [int(x) for x in lam],
            components=[(c.r, c.g, c.s) for c in summary.components],
            gaschuetz_method=method,
        )
    return checks


def gaschuetz(G: FiniteGroup) -> bool:
    return all(c.gaschuetz for c in prime_checks(G).values())


def weisner(G: FiniteGroup) -> bool:
    return all(c.weisner for c in prime_checks(G).values())


def akizuki(G: FiniteGroup) -> bool:
    return all(c.akizuki for c in prime_checks(G).values())


def _check_characteristic(c: int) -> int:
    c = int(c)
    if c != 0 and not is_prime(c):
        raise ValueError(f"characteristic must be 0 or a prime, got {c}")
    return c


def burnside_sufficient(G: FiniteGroup) -> bool:
    """No two distinct minimal normal subgroups of order a power of the same prime."""
    seen: set[int] = set()
    for N in minimal_normal_subgroups(G):
        primes = prime_factors(N.order)
        if len(primes) == 1:
            if primes[0] in seen:
                return False
            seen.add(primes[0])
    return True


def kochendorffer_sufficient(G: FiniteGroup) -> bool:
    """Every Sylow subgroup has cyclic center."""
    for p in prime_factors(G.n):
        P, _ = sylow(G, p).as_group()
        if not is_cyclic_group(center(P)):
            return False
    return True


def fite_nilpotent(G: FiniteGroup) -> bool | None:
    """For nilpotent G, whether the center is cyclic; None otherwise."""
    if not is_nilpotent(G):
        return None
    return is_cyclic_group(center(G))


def verdict(G: FiniteGroup, characteristic: int = 0, group_spec: str = "", cap: int | None = None) -> CriterionReport:
    characteristic = _check_characteristic(characteristic)
    report = socle_report(G)
    checks = prime_checks(G, report, cap)
    ok = characteristic not in report.primes and all(c.weisner for c in checks.values())
    nilpotent = is_nilpotent(G)
    return CriterionReport(
        group_spec=group_spec,
        characteristic=characteristic,
        primes_pi=list(report.primes),
        per_prime=checks,
        verdict=ok,
        sufficient_flags={
            "burnside": burnside_sufficient(G),
            "kochendorffer": kochendorffer_sufficient(G),
        },
        nilpotent_case={
            "is_nilpotent": nilpotent,
            "center_cyclic": is_cyclic_group(center(G)),
        },
    )
