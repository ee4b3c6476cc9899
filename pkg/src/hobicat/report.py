"""Check reports shared by the checkers and the command line."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Check:
    name: str
    status: str = PASS
    count: int = 0
    counterexample: object = None
    instances: list = field(default_factory=list)
    note: str = ""

    def violate(self, instance, keep_all: bool = False) -> None:
        if self.count == 0:
            self.counterexample = instance
        if keep_all:
            self.instances.append(instance)
        self.count += 1
        self.status = FAIL

    def inconclusive(self, note: str) -> None:
        if self.status == PASS:
            self.status = INCONCLUSIVE
        self.note = note

    @property
    def ok(self) -> bool:
        return self.status == PASS


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    facts: list[tuple[str, str]] = field(default_factory=list)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        c = Check(name)
        self.checks.append(c)
        return c

    def fact(self, key: str, value) -> None:
        self.facts.append((key, str(value)))

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            c.name = prefix + c.name
            self.checks.append(c)
        self.facts.extend((prefix + k, v) for k, v in other.facts)

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        out = [f"check: {self.title}"]
        out += [f"{k}: {v}" for k, v in self.facts]
        for c in self.checks:
            line = f"{c.name}: {c.status}"
            if c.count:
                line += f" ({c.count} violation{'s' if c.count != 1 else ''})"
            out.append(line)
            if c.counterexample is not None:
                out.append(f"{c.name}.counterexample: {format_instance(c.counterexample)}")
            if c.note:
                out.append(f"{c.name}.note: {c.note}")
        out.append(f"RESULT: {self.status}")
        return out

    def records(self) -> list[str]:
        out = []
        for c in self.checks:
            rec = f"record\tcheck={self.title}\titem={c.name}\tstatus={c.status}\tcount={c.count}"
            if c.counterexample is not None:
                rec += f"\tcounterexample={format_instance(c.counterexample)}"
            out.append(rec)
        out.append(f"record\tcheck={self.title}\titem=RESULT\tstatus={self.status}")
        return out


def format_instance(instance) -> str:
    if isinstance(instance, dict):
        return " ".join(f"{k}={format_instance(v)}" for k, v in instance.items())
    if isinstance(instance, (tuple, list)):
        return "(" + ", ".join(format_instance(x) for x in instance) + ")"
    return str(instance)
