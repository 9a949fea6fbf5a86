"""Search outcome record shared by the MGR and ADS searches."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

STATUS_EXISTS = "EXISTS"
STATUS_DS_ONLY = "DS_ONLY"
STATUS_NONE = "NONE"
STATUS_TIMEOUT = "TIMEOUT"


@dataclass
class SearchReport:
    status: str
    witness: Optional[list] = None
    count: Optional[int] = None
    nodes: int = 0
    seconds: float = 0.0
    witnesses: Optional[list] = None  # ALL mode only

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "witness": self.witness,
            "count": self.count,
            "nodes": self.nodes,
            "seconds": round(self.seconds, 6),
        }
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        return out
