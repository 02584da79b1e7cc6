"""The bundled configuration corpus and its golden files."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

FIXTURES_DIR = Path(__file__).parent


@dataclass(frozen=True)
class Fixture:
    id: str
    vendor: str
    config_path: Path
    description: str
    expected_model_path: Optional[Path] = None
    expected_script_path: Optional[Path] = None
    device: bool = False
    # (exception class name, line, column) for negative fixtures
    error: Optional[tuple] = None

    @property
    def positive(self) -> bool:
        return self.error is None

    def text(self) -> str:
        return self.config_path.read_text(encoding="utf-8")


def corpus() -> List[Fixture]:
    manifest = json.loads((FIXTURES_DIR / "manifest.json").read_text(encoding="utf-8"))
    out = []
    for entry in manifest["fixtures"]:
        fid = entry["id"]
        err = entry.get("error")
        expected = FIXTURES_DIR / "expected"
        out.append(Fixture(
            id=fid,
            vendor=entry["vendor"],
            config_path=FIXTURES_DIR / "configs" / f"{fid}.cfg",
            description=entry["description"],
            expected_model_path=None if err else expected / f"{fid}.json",
            expected_script_path=None if err else expected / f"{fid}.txt",
            device=entry.get("device", False),
            error=(err["type"], err["line"], err["column"]) if err else None,
        ))
    return out


def positive() -> List[Fixture]:
    return [f for f in corpus() if f.positive]


def negative() -> List[Fixture]:
    return [f for f in corpus() if not f.positive]


def devices() -> List[Fixture]:
    """The nine-router OSPF campus network."""
    return [f for f in corpus() if f.device]


def write_goldens() -> None:
    """Regenerate expected models and scripts from the current pipeline."""
    from ..extractor import extract_text
    from ..generator import generate
    from ..metamodel import serialize_model

    for f in positive():
        model = extract_text(f.text(), f.vendor)
        f.expected_model_path.parent.mkdir(exist_ok=True)
        f.expected_model_path.write_text(serialize_model(model), encoding="utf-8")
        f.expected_script_path.write_text(generate(model).text(), encoding="utf-8")
