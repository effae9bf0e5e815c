"""Check reports.

Every axiom/identity checker in this package returns a Report: a list of
CheckItems in deterministic order (basis order, then check name).  An item
records the residual of one identity instance as a list of *addends* per
target generator; the identity holds iff every addend list sums to the zero
polynomial.  Keeping the addends (and not just their canonical sum) lets the
random-evaluation oracle re-verify each verdict numerically: it evaluates
the addends separately at random rational points and checks that the
cancellation seen symbolically also happens pointwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import Poly


@dataclass(frozen=True)
class CheckItem:
    check: str
    location: str
    # per target generator: the addends whose sum is the residual
    parts: tuple  # tuple[tuple[str, tuple[Poly, ...]], ...]

    @property
    def passed(self) -> bool:
        for _, addends in self.parts:
            total = Poly.zero()
            for p in addends:
                total = total + p
            if not total.is_zero:
                return False
        return True

    def residual(self) -> dict:
        """Nonzero residual polynomials per target generator."""
        out = {}
        for target, addends in self.parts:
            total = Poly.zero()
            for p in addends:
                total = total + p
            if not total.is_zero:
                out[target] = total
        return out


def item_from_parts(check: str, location: str, parts: dict) -> CheckItem:
    """Build a CheckItem from {target: [addend polys]} (targets sorted)."""
    packed = tuple(
        (target, tuple(parts[target])) for target in sorted(parts) if parts[target]
    )
    return CheckItem(check=check, location=location, parts=packed)


@dataclass
class Report:
    subject: str
    items: list = field(default_factory=list)
    elapsed: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> list:
        return [item for item in self.items if not item.passed]

    def extend(self, other: "Report") -> None:
        self.items.extend(other.items)
        self.elapsed += other.elapsed
        self.meta.update(other.meta)

    def checks_run(self) -> list:
        seen = []
        for item in self.items:
            if item.check not in seen:
                seen.append(item.check)
        return seen

    def check_ok(self, check: str) -> bool:
        return all(item.passed for item in self.items if item.check == check)

    def format_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        for key in sorted(self.meta):
            lines.append(f"  {key}: {self.meta[key]}")
        for check in self.checks_run():
            bad = [i for i in self.items if i.check == check and not i.passed]
            n = sum(1 for i in self.items if i.check == check)
            status = "PASS" if not bad else "FAIL"
            lines.append(f"  [{status}] {check} ({n} instances)")
            for item in bad:
                res = ", ".join(
                    f"{t}: {p}" for t, p in sorted(item.residual().items())
                )
                lines.append(f"       at {item.location}: {res}")
        lines.append(f"  overall: {'PASS' if self.ok else 'FAIL'}")
        lines.append(f"  elapsed: {self.elapsed:.4f}s")
        return "\n".join(lines)

    def to_json(self) -> dict:
        from .serialize import poly_to_wire

        checks = []
        for item in self.items:
            checks.append(
                {
                    "check": item.check,
                    "location": item.location,
                    "pass": item.passed,
                    "residual": {
                        t: poly_to_wire(p) for t, p in sorted(item.residual().items())
                    },
                }
            )
        return {
            "subject": self.subject,
            "ok": self.ok,
            "meta": dict(sorted(self.meta.items())),
            "checks": checks,
            "elapsed": self.elapsed,
        }


def random_point(rng: random.Random, variables) -> dict:
    return {
        v: Fraction(rng.randint(-99, 99), rng.randint(1, 20)) for v in variables
    }


def evaluation_agrees(report: Report, seed: int, points: int = 100) -> bool:
    """Re-verify every item verdict by evaluation at random rational points.

    For each item, the addends are evaluated separately and summed, so a
    symbolic PASS must cancel numerically at every point, and a symbolic FAIL
    must show a nonzero value at at least one point.
    """
    rng = random.Random(seed)
    for item in report.items:
        for target, addends in item.parts:
            variables = sorted(set().union(*[p.variables() for p in addends]))
            total_sym = Poly.zero()
            for p in addends:
                total_sym = total_sym + p
            saw_nonzero = False
            for _ in range(points):
                point = random_point(rng, variables)
                value = sum((p.eval_at(point) for p in addends), Fraction(0))
                if total_sym.is_zero:
                    if value != 0:
                        return False
                elif value != 0:
                    saw_nonzero = True
            if not total_sym.is_zero and not saw_nonzero:
                return False
    return True
