#!/usr/bin/env python3
"""Regenerate the frontend's golden diagram fixtures from service payloads.

Writes frontend/tests/golden_diagrams.json: twenty diagrams spanning one to
five contours, each exactly as the HTTP service would serialize it, plus
the benchmark theorem texts the session test drives through the UI.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

from euler_tactics.diagram import UnitaryDiagram, Zone, venn_zones
from euler_tactics.service import diagram_json
from euler_tactics.textio import print_theorem

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from conftest import (  # noqa: E402
    deep_theorem,
    disjoint_diagram,
    fig1_d1,
    flat_theorem,
    random_unitary,
    subset_diagram,
)

Z = Zone


def golden_diagrams() -> list[UnitaryDiagram]:
    rng = random.Random(20240601)
    out = [
        # one contour
        UnitaryDiagram({"A"}, [Z(), Z("A")]),
        UnitaryDiagram({"A"}, [Z(), Z("A")], [Z("A")]),
        UnitaryDiagram({"A"}, [Z()]),
        # two contours
        UnitaryDiagram({"A", "B"}, venn_zones(["A", "B"])),
        subset_diagram("A", "B"),
        disjoint_diagram("A", "B"),
        UnitaryDiagram({"A", "B"}, venn_zones(["A", "B"]), [Z("A"), Z(["A", "B"])]),
        # three contours
        fig1_d1(),
        UnitaryDiagram({"A", "B", "C"}, venn_zones(["A", "B", "C"])),
        UnitaryDiagram(
            {"A", "B", "C"},
            venn_zones(["A", "B", "C"]),
            [Z(["A", "B", "C"]), Z("C")],
        ),
        UnitaryDiagram({"A", "B", "C"}, [Z(), Z("A"), Z("B"), Z("C"), Z(["A", "B"])], [Z(["A", "B"])]),
        random_unitary(rng, labels=("A", "B", "C")),
        # four contours
        UnitaryDiagram({"A", "B", "C", "D"}, venn_zones(["A", "B", "C", "D"])),
        UnitaryDiagram(
            {"A", "B", "C", "D"},
            venn_zones(["A", "B", "C", "D"]),
            [Z(["A", "B", "C", "D"]), Z("D"), Z(["A", "D"])],
        ),
        UnitaryDiagram(
            {"A", "B", "C", "D"},
            [Z(), Z("A"), Z("B"), Z("C"), Z("D"), Z(["A", "B"]), Z(["C", "D"])],
            [Z(["C", "D"])],
        ),
        UnitaryDiagram({"W", "X", "Y", "Z_0"}, [Z(), Z("W"), Z(["W", "X"]), Z("Y"), Z("Z_0")]),
        # five contours: table fallback
        UnitaryDiagram(list("ABCDE"), venn_zones(list("ABCDE"))),
        UnitaryDiagram(
            list("ABCDE"),
            venn_zones(list("ABCDE")),
            [Z("E"), Z(["A", "E"]), Z(["A", "B", "C", "D", "E"])],
        ),
        UnitaryDiagram(list("ABCDE"), [Z(), Z("A"), Z("B"), Z("C"), Z("D"), Z("E")], [Z("E")]),
        UnitaryDiagram(
            list("ABCDE"),
            [Z(), Z("A"), Z(["A", "B"]), Z(["A", "B", "C"]), Z(["A", "B", "C", "D"]),
             Z(["A", "B", "C", "D", "E"])],
            [Z(["A", "B", "C", "D", "E"])],
        ),
    ]
    assert len(out) == 20
    assert {len(d.contours) for d in out} == {1, 2, 3, 4, 5}
    return out


def main() -> None:
    fixture = {
        "diagrams": [diagram_json(d) for d in golden_diagrams()],
        "theorems": {
            "flat": print_theorem(flat_theorem()),
            "deep": print_theorem(deep_theorem()),
        },
    }
    out = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "golden_diagrams.json"
    out.write_text(json.dumps(fixture, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(fixture['diagrams'])} diagrams)")


if __name__ == "__main__":
    main()
