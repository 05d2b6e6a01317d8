"""Line-oriented verification reports and CSV export.

Layout (two-space indentation marks nesting)::

    report vazhu <version>
    config <key>=<value> ...
    suite <name>
      check <name> status=<status> [level=<P>]
        input <key>=<value>
        detail <text>
    summary certificate=<k> fail=<k> inconclusive=<k> pass=<k>
    exit <code>

Every number is an integer or an exact ``p/q``.  Timing lines appear only
when requested, since they break byte-for-byte reproducibility.
"""
import csv
import io
from dataclasses import dataclass, field

from . import __version__
from .twistzhu import Verdict

STATUSES = ("certificate", "fail", "inconclusive", "pass")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def as_verdict(obj):
    """Normalize the various check records to a Verdict."""
    if isinstance(obj, Verdict):
        return obj
    inputs = dict(getattr(obj, "inputs", None) or {})
    if hasattr(obj, "s"):
        inputs["s"] = obj.s
    witness = getattr(obj, "witness", None)
    return Verdict(obj.name, obj.status, inputs, "" if witness is None else str(witness))


@dataclass
class Report:
    config: dict
    suites: list = field(default_factory=list)  # (name, [Verdict], {timing})

    def add(self, suite, records, seconds=None):
        self.suites.append((suite, [as_verdict(r) for r in records], seconds))

    def counts(self):
        out = dict.fromkeys(STATUSES, 0)
        for _, recs, _ in self.suites:
            for r in recs:
                out[r.status] += 1
        return out

    def exit_code(self):
        c = self.counts()
        if c["fail"]:
            return EXIT_FAIL
        if c["inconclusive"]:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def render(self, timings=False):
        lines = [f"report vazhu {__version__}"]
        lines.append("config " + " ".join(f"{k}={v}" for k, v in sorted(self.config.items())))
        for name, recs, seconds in self.suites:
            lines.append(f"suite {name}")
            if timings and seconds is not None:
                lines.append(f"  timing ms={round(seconds * 1000)}")
            for r in recs:
                head = f"  check {r.name} status={r.status}"
                if r.level is not None:
                    head += f" level={r.level}"
                lines.append(head)
                for k, v in r.inputs.items():
                    lines.append(f"    input {k}={v}")
                if r.detail:
                    lines.append(f"    detail {r.detail}")
        c = self.counts()
        lines.append("summary " + " ".join(f"{k}={c[k]}" for k in STATUSES))
        lines.append(f"exit {self.exit_code()}")
        return "\n".join(lines) + "\n"


def mono_text(mono):
    return "[" + ",".join(map(str, mono)) + "]"


def quotient_text(q):
    from .voa import format_rational
    lines = [f"quotient kind={q.kind} n={q.tw} W={q.W} P={q.P} ambient={q.ambient_cap} dim={q.dim}",
             f"note {q.note}",
             "reps " + " ".join(mono_text(m) for m in q.reps),
             f"unit index={q.unit_index} ok={q.unit_ok}"]
    for (i, j), val in sorted(q.table.items()):
        if val is None:
            lines.append(f"  e{i}*e{j} = unavailable")
        else:
            body = " + ".join(f"{format_rational(c)}*e{k}" for k, c in val.items()) or "0"
            lines.append(f"  e{i}*e{j} = {body}")
    for j, ok in sorted(q.centrality.items()):
        lines.append(f"  central omega*e{j} status={'certificate' if ok else 'inconclusive'}")
    return "\n".join(lines) + "\n"


def structure_csv(q):
    """CSV rows left,right,result,coefficient; unavailable products get an
    empty result and the word ``unavailable``."""
    from .voa import format_rational
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["left", "right", "result", "coefficient"])
    for (i, j), val in sorted(q.table.items()):
        a, b = mono_text(q.reps[i]), mono_text(q.reps[j])
        if val is None:
            w.writerow([a, b, "", "unavailable"])
            continue
        for k, c in val.items():
            w.writerow([a, b, mono_text(q.reps[k]), format_rational(c)])
    return buf.getvalue()
