"""JSON reading and writing for fields, posets, diagrams, vectors and tables."""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import CycNumber, Field, prime_power
from .arcs import ArcDiagram, validate
from .posets import Poset, poset_from_covers


def dumps(obj) -> str:
    """Deterministic JSON text (fixed key order from construction, 2-space indent)."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def parse_modulus(text):
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return [int(c) for c in text]
    text = text.strip()
    if text.startswith("["):
        return [int(c) for c in json.loads(text)]
    return [int(c) for c in text.split(",") if c.strip()]


def field_from_q(q: int, e: int | None = None, modulus=None) -> Field:
    """GF(q) from an order; extension fields need their modulus (constant coefficient first)."""
    p, k = prime_power(q)
    if e is not None and e != k:
        raise ValueError(f"--e {e} does not match q = {q}")
    return Field(p, k, parse_modulus(modulus))


def poset_from_json(data) -> Poset:
    if "linear" in data:
        n = data["linear"]
        labels = [str(i) for i in range(1, n + 1)] if isinstance(n, int) else [str(x) for x in n]
        return poset_from_covers(labels, list(zip(labels, labels[1:])))
    return poset_from_covers([str(x) for x in data.get("elements", [])],
                             [(str(a), str(b)) for a, b in data.get("covers", [])])


def _label_value(field: Field, value):
    if isinstance(value, list):
        return [int(c) for c in value]
    return int(value)


def diagram_from_json(data, poset: Poset | None = None, field: Field | None = None) -> ArcDiagram:
    """Read ``{"arcs": [...]}``; poset and field may be embedded or passed in."""
    if poset is None:
        poset = poset_from_json(data["poset"])
    if field is None:
        field = Field.from_json(data["field"])
    arcs = [(str(a["from"]), str(a["to"]), _label_value(field, a["label"])) for a in data.get("arcs", [])]
    return validate(poset, field, arcs)


def diagram_document(d: ArcDiagram) -> dict:
    doc = {"poset": d.poset.to_json(), "field": d.field.to_json()}
    doc.update(d.to_json())
    return doc


def cyc_from_json(data) -> CycNumber:
    return CycNumber(int(data["p"]), [Fraction(c) for c in data["coords"]])


def table_to_json(table) -> dict:
    return {
        "theory": table.theory,
        "poset": table.poset.to_json(),
        "field": table.field.to_json(),
        "rows": [d.to_json() for d in table.rows],
        "cols": [d.to_json() for d in table.cols],
        "dims": table.dims,
        "class_sizes": table.class_sizes,
        "values": [[v.to_json() for v in row] for row in table.values],
    }


def table_from_json(data):
    from .supercharacters import SupercharacterTable
    poset = poset_from_json(data["poset"])
    field = Field.from_json(data["field"])
    rows = [diagram_from_json(r, poset, field) for r in data["rows"]]
    cols = [diagram_from_json(c, poset, field) for c in data["cols"]]
    values = [[cyc_from_json(v) for v in row] for row in data["values"]]
    return SupercharacterTable(poset, field, rows, cols, values, list(data["class_sizes"]),
                               list(data["dims"]), theory=data.get("theory", "nonnesting"))


def vector_from_json(data, basis: str | None = None):
    """An ScfVector document, or a single diagram read as a basis element."""
    from .hopf import ScfVector
    poset = poset_from_json(data["poset"])
    field = Field.from_json(data["field"])
    if "terms" in data:
        coeffs = {diagram_from_json(t["diagram"], poset, field): cyc_from_json(t["coeff"])
                  for t in data["terms"]}
        return ScfVector(poset, field, basis or data.get("basis", "kappa"), coeffs)
    d = diagram_from_json(data, poset, field)
    return ScfVector.basis_element(basis or data.get("basis", "kappa"), d)
