"""Append-only results ledger: one JSON line per completed search.

Records are keyed by (triangulation label, extent, mode, engine
version); re-running a key appends a superseding record rather than
mutating history, and batch runs resume by skipping keys already
present.  The path comes from the GRID_REALIZER_LEDGER environment
variable unless given explicitly.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from gridrealizer import ENGINE_VERSION

DEFAULT_LEDGER = "gridrealizer-ledger.jsonl"
ENV_VAR = "GRID_REALIZER_LEDGER"


@dataclass(frozen=True)
class LedgerRecord:
    label: str
    extent: int
    mode: str
    status: str
    witness: Optional[dict]
    stats: dict
    engine_version: str
    timestamp: str

    def key(self) -> tuple:
        return (self.label, self.extent, self.mode, self.engine_version)


def make_record(label, extent, mode, status, witness, stats) -> LedgerRecord:
    return LedgerRecord(
        label=label,
        extent=extent,
        mode=mode,
        status=status,
        witness={str(k): list(v) for k, v in witness.items()} if witness else None,
        stats=stats,
        engine_version=ENGINE_VERSION,
        timestamp=time.strftime("%Y-%m-%dT%H:%M:%S"),
    )


class ResultsLedger:
    def __init__(self, path: Optional[str] = None):
        self.path = Path(path or os.environ.get(ENV_VAR) or DEFAULT_LEDGER)

    def append(self, record: LedgerRecord) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(asdict(record), separators=(",", ":")) + "\n")
            fh.flush()

    def load(self) -> list[LedgerRecord]:
        if not self.path.exists():
            return []
        out = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                out.append(LedgerRecord(**obj))
        return out

    def keys(self) -> set:
        return {r.key() for r in self.load()}

    def latest(self) -> dict[tuple, LedgerRecord]:
        """Last record per key (supersession order = file order)."""
        out: dict[tuple, LedgerRecord] = {}
        for r in self.load():
            out[r.key()] = r
        return out
