"""Cross-checks between the graph reading, the homology oracle and the
Stanley depth solver."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .generate import (
    GenerationExhausted,
    GenSpec,
    random_concatenation,
    random_ideal,
)
from .graph import depth_by_theorem
from .homology import depth_oracle
from .ideal import SquarefreeIdeal, normalize, profile
from .sdepth import FEASIBLE, INFEASIBLE, sdepth_at_least

CHARACTERISTICS = (0, 2)
RANDOM_TARGETS = ("random", "bigsize2", "join", "chain", "tree")


@dataclass
class Violation:
    check: str
    ideal: SquarefreeIdeal
    detail: str

    def to_dict(self) -> dict:
        return {"check": self.check, "ideal": self.ideal.to_dict(), "detail": self.detail}


@dataclass
class CaseReport:
    ideal: SquarefreeIdeal
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def record(self, name: str, ok, detail: str = ""):
        """``ok`` is True, False, or None for a check that could not run."""
        self.checks[name] = "pass" if ok else ("skipped" if ok is None else "fail")
        if ok is False:
            self.violations.append(Violation(name, self.ideal, detail))

    def to_dict(self) -> dict:
        return {
            "ideal": self.ideal.to_dict(),
            "checks": dict(sorted(self.checks.items())),
            "violations": [v.to_dict() for v in self.violations],
        }


def _outcome(result):
    return {FEASIBLE: True, INFEASIBLE: False}.get(result.status)


def check_instance(
    ideal: SquarefreeIdeal,
    sdepth_max_vars: int = 10,
    sdepth_budget_ms: float = 10_000,
) -> CaseReport:
    report = CaseReport(ideal)
    prof = profile(ideal)
    depths = {c: depth_oracle(ideal, c).ideal_depth for c in CHARACTERISTICS}
    verdict = depth_by_theorem(ideal)

    if verdict.applicable:
        report.record(
            "theorem_matches_oracle",
            all(d == verdict.ideal_depth for d in depths.values()),
            f"theorem {verdict.ideal_depth}, oracle {depths}",
        )
        if ideal.s > 1:
            allowed = {1, 2} | ({1 + verdict.q} if verdict.q else set())
            report.record(
                "trichotomy",
                verdict.reduced_module_depth in allowed,
                f"reduced module depth {verdict.reduced_module_depth} not in {sorted(allowed)}",
            )
    else:
        report.record("theorem_matches_oracle", None)

    report.record(
        "lyubeznik_bound",
        min(depths.values()) >= 1 + prof.size,
        f"depth {depths} < 1 + size {prof.size}",
    )

    if ideal.n <= sdepth_max_vars:
        target = max(depths.values())
        res = sdepth_at_least(ideal, target, budget_ms=sdepth_budget_ms)
        report.record(
            "sdepth_at_least_depth",
            _outcome(res),
            f"no interval partition with tops >= depth {target}",
        )
        floor = sdepth_at_least(ideal, 1 + prof.size, budget_ms=sdepth_budget_ms)
        report.record(
            "sdepth_at_least_1_plus_size",
            _outcome(floor),
            f"no interval partition with tops >= {1 + prof.size}",
        )
    return report


def check_concatenation(seed: int, max_vars: int = 9) -> CaseReport:
    cat = random_concatenation(seed, max_vars=max_vars)
    report = CaseReport(cat.ideal)
    whole = depth_oracle(cat.ideal).ideal_depth
    parts = [depth_oracle(cat.part(k)).ideal_depth for k in (1, 2)]
    report.record(
        "concatenation_min_law",
        whole == min(parts),
        f"depth {whole} != min of parts {parts} (shared vertex {cat.shared})",
    )
    return report


def shrink(ideal: SquarefreeIdeal, check: str, **kwargs) -> SquarefreeIdeal:
    """Greedily drop primes and variables while ``check`` keeps failing."""

    def fails(candidate):
        try:
            rep = check_instance(candidate, **kwargs)
        except Exception:
            return False
        return any(v.check == check for v in rep.violations)

    current = ideal
    changed = True
    while changed:
        changed = False
        for i in range(current.s):
            if current.s == 1:
                break
            rest = [p for k, p in enumerate(current.primes) if k != i]
            cand = normalize(rest, current.n)
            if fails(cand):
                current, changed = cand, True
                break
        if changed:
            continue
        for x in range(1, current.n + 1):
            if current.n == 1:
                break
            relabel = {y: y - (y > x) for y in range(1, current.n + 1) if y != x}
            cut = [frozenset(relabel[y] for y in p if y != x) for p in current.primes]
            if any(not p for p in cut):
                continue
            cand = normalize(cut, current.n - 1)
            if fails(cand):
                current, changed = cand, True
                break
    return current


def run_random(
    count: int,
    seed: int,
    n: int,
    s: int,
    concatenations: bool = True,
    budget_ms: float = 60_000,
) -> dict:
    """Seeded batch of instances across all generator targets."""
    start = time.perf_counter()
    cases, skipped = [], []
    for k in range(count):
        target = RANDOM_TARGETS[k % len(RANDOM_TARGETS)]
        spec = GenSpec(n=n, s=max(s, 3) if target != "random" else s, target=target, seed=seed * 100_003 + k)
        try:
            ideal = random_ideal(spec).ideal
        except GenerationExhausted as exc:
            skipped.append({"index": k, "target": target, "reason": str(exc)})
            continue
        cases.append(check_instance(ideal, sdepth_budget_ms=budget_ms / max(count, 1)))
        if concatenations and k % 5 == 4:
            cases.append(check_concatenation(seed * 100_003 + k, max_vars=max(n, 6)))
    violations = [v for c in cases for v in c.violations]
    return {
        "cases": cases,
        "skipped": skipped,
        "violations": violations,
        "elapsed_ms": (time.perf_counter() - start) * 1000,
    }
