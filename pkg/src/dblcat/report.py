"""Check reports shared by every checker in the package.

A checker is a list of :class:`Family` objects.  Each family enumerates
keyed instances and a predicate; :func:`run_families` evaluates them all and
collects at most a few failing keys per family as witnesses.  Keys are plain
tuples (usually indices into a universe), so a witness can be replayed by
re-running the family on that single key.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Witness:
    family: str
    key: tuple
    detail: str = ""

    def to_json(self):
        return {"family": self.family, "key": _jsonable(self.key), "detail": self.detail}


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    witnesses: list = field(default_factory=list)
    failures: int = 0

    @property
    def status(self):
        return "pass" if self.failures == 0 else "fail"

    @property
    def ok(self):
        return self.failures == 0

    def to_json(self):
        return {
            "name": self.name,
            "status": self.status,
            "instances": self.instances,
            "failures": self.failures,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


class Family:
    """One axiom family: ``instances()`` yields ``(key, args)`` pairs.

    ``predicate(*args)`` returns True on success; anything else (False, a
    message string, or a raised DblcatError) is a failure.
    """

    def __init__(self, name, instances, predicate):
        self.name = name
        self.instances = instances
        self.predicate = predicate

    def evaluate(self, args):
        try:
            verdict = self.predicate(*args)
        except Exception as exc:  # corrupted data may break boundaries mid-check
            return False, f"{type(exc).__name__}: {exc}"
        if verdict is True:
            return True, ""
        if verdict is False or verdict is None:
            return False, "equation does not hold"
        return False, str(verdict)

    def replay(self, key):
        key = _tupleize(key)
        for k, args in self.instances():
            if _tupleize(k) == key:
                return self.evaluate(args)[0]
        raise KeyError(f"no instance {key!r} in family {self.name}")


class Report:
    def __init__(self, checks=None, families=None):
        self.checks = list(checks or [])
        self._families = dict(families or {})

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def names(self):
        return [c.name for c in self.checks]

    def failed(self):
        return [c for c in self.checks if not c.ok]

    def extend(self, other, prefix=""):
        for c in other.checks:
            if prefix:
                c = CheckResult(prefix + c.name, c.instances,
                                [Witness(prefix + w.family, w.key, w.detail) for w in c.witnesses],
                                c.failures)
            self.checks.append(c)
        for name, fam in other._families.items():
            self._families[prefix + name] = fam
        return self

    def replay(self, witness):
        """Re-run the single instance named by ``witness``; True means it now passes."""
        return self._families[witness.family].replay(witness.key)

    def summary(self):
        lines = []
        for c in self.checks:
            lines.append(f"{c.status.upper():4}  {c.name}  ({c.instances} instances)")
            for w in c.witnesses:
                lines.append(f"      witness {w.key}: {w.detail}")
        return "\n".join(lines)

    def __repr__(self):
        bad = [c.name for c in self.failed()]
        return f"<Report {len(self.checks)} checks, failed={bad}>"


def run_families(families, max_witnesses=3, stop_after=None):
    report = Report()
    for fam in families:
        result = CheckResult(fam.name)
        for key, args in fam.instances():
            result.instances += 1
            ok, detail = fam.evaluate(args)
            if not ok:
                result.failures += 1
                if len(result.witnesses) < max_witnesses:
                    result.witnesses.append(Witness(fam.name, _tupleize(key), detail))
                if stop_after is not None and result.failures >= stop_after:
                    break
        report.checks.append(result)
        report._families[fam.name] = fam
    return report


def _tupleize(key):
    if isinstance(key, (list, tuple)):
        return tuple(_tupleize(k) for k in key)
    return key


def _jsonable(key):
    if isinstance(key, tuple):
        return [_jsonable(k) for k in key]
    return key
