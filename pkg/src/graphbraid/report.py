"""Machine-readable command reports (JSON and CSV) with exact round-trips."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass, field

from .graph import Graph, format_graph

FORMATS = ("table", "json", "csv")


def input_digest(g: Graph) -> str:
    return hashlib.sha256(format_graph(g).encode()).hexdigest()


@dataclass
class Report:
    command: str
    input_digest: str
    result: dict
    warnings: list[str] = field(default_factory=list)
    timing: dict[str, float] | None = None
    ok: bool = True

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        """Two columns, ``field`` and ``value``; values are JSON encoded.

        Each top-level key of ``result`` gets its own ``result.<key>`` row.
        Keys must not contain NUL.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_ALL)
        w.writerow(["field", "value"])
        w.writerow(["command", json.dumps(self.command)])
        w.writerow(["input_digest", json.dumps(self.input_digest)])
        w.writerow(["ok", json.dumps(self.ok)])
        w.writerow(["warnings", json.dumps(self.warnings)])
        w.writerow(["timing", json.dumps(self.timing, sort_keys=True)])
        for key in sorted(self.result):
            w.writerow([f"result.{key}", json.dumps(self.result[key], sort_keys=True)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Report":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["field", "value"]:
            raise ValueError("not a report CSV")
        top: dict = {}
        result: dict = {}
        for name, value in rows[1:]:
            if name.startswith("result."):
                result[name[len("result.") :]] = json.loads(value)
            else:
                top[name] = json.loads(value)
        return cls(result=result, **top)

    def emit(self, fmt: str, table: str | None = None) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "table":
            lines = [table if table is not None else json.dumps(self.result, indent=2)]
            lines += [f"warning: {w}" for w in self.warnings]
            if self.timing:
                lines += [f"time {k}: {v:.3f}s" for k, v in sorted(self.timing.items())]
            return "\n".join(lines).rstrip("\n") + "\n"
        raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str, fmt: str) -> Report:
    if fmt == "json":
        return Report.from_json(text)
    if fmt == "csv":
        return Report.from_csv(text)
    raise ValueError(f"format {fmt!r} cannot be parsed back")
