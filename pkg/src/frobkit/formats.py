"""Text and JSON formats for fields, polynomials, matrices, and triples.

Matrix text: a header line "<field> <rows> <cols>" where <field> is a prime
power (e.g. 3, 9, 25) or Q for rationals, then one line per row of
space-separated canonical entries. Extension-field entries are integer codes
in [0, q) (base-p digits, constant coefficient lowest). Rationals are "a" or
"a/b".

Polynomial text: "Fq p=<p> k=<k> | c0,c1,..." or "Q | c0,c1,..." with
coefficients low-to-high.

Triple text: three matrix blocks (A, then v, then phi) separated by blank
lines, all over the same field.

Every JSON object carries schema "frobkit/1"; entries are canonical strings.
"""

from __future__ import annotations

import json
from typing import Any

from .canonical import ElementaryDivisorForm, FrobeniusForm
from .errors import ParseError
from .fields import GF, QQ, Field, RationalField
from .matrix import Mat
from .poly import Poly
from .triples import Triple

SCHEMA = "frobkit/1"


# -- field tags -------------------------------------------------------------------


def field_tag(field: Field) -> str:
    if isinstance(field, RationalField):
        return "Q"
    return str(field.order)


def field_from_tag(tag: str) -> Field:
    """Accepts a prime power ("9"), an explicit "p^k" ("3^2"), or "Q"."""
    tag = tag.strip()
    if tag == "Q":
        return QQ
    try:
        if "^" in tag:
            p_str, _, k_str = tag.partition("^")
            p, k = int(p_str), int(k_str)
            return GF(p) if k == 1 else GF(p, k)
        return GF(int(tag))
    except ValueError as exc:
        raise ParseError(f"bad field tag {tag!r}") from exc


# -- matrices ----------------------------------------------------------------------


def render_matrix(m: Mat) -> str:
    lines = [f"{field_tag(m.field)} {m.nrows} {m.ncols}"]
    for i in range(m.nrows):
        lines.append(" ".join(m.field.to_str(c) for c in m.row(i)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Mat:
    lines = [ln.rstrip() for ln in text.strip("\n").split("\n")] if text.strip() else []
    if not lines:
        raise ParseError("empty matrix text")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError(f"bad matrix header {lines[0]!r}")
    field = field_from_tag(head[0])
    try:
        nrows, ncols = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ParseError(f"bad matrix shape in header {lines[0]!r}") from exc
    if nrows < 0 or ncols < 0:
        raise ParseError("negative matrix shape")
    body = lines[1:]
    if len(body) < nrows:
        raise ParseError(f"expected {nrows} rows, got {len(body)}")
    cells = []
    for i in range(nrows):
        parts = body[i].split()
        if len(parts) != ncols:
            raise ParseError(f"row {i}: expected {ncols} entries, got {len(parts)}")
        cells.extend(field.from_str(p) for p in parts)
    return Mat.from_raw(field, nrows, ncols, cells)


def matrix_to_json(m: Mat) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "matrix",
        "field": field_tag(m.field),
        "rows": m.nrows,
        "cols": m.ncols,
        "entries": [[m.field.to_str(c) for c in m.row(i)] for i in range(m.nrows)],
    }


def matrix_from_json(d: dict) -> Mat:
    _expect(d, "matrix")
    field = field_from_tag(str(d["field"]))
    try:
        entries = d["entries"]
        cells = [field.from_str(str(c)) for row in entries for c in row]
        m = Mat.from_raw(field, int(d["rows"]), int(d["cols"]), cells)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix json: {exc}") from exc
    return m


# -- polynomials --------------------------------------------------------------------


def render_poly(f: Poly) -> str:
    F = f.field
    if isinstance(F, RationalField):
        tag = "Q"
    else:
        p = F.characteristic
        k = getattr(F, "degree", 1)
        tag = f"Fq p={p} k={k}"
    coeffs = f.coeffs if f.coeffs else (F.zero,)
    return f"{tag} | " + ",".join(F.to_str(c) for c in coeffs)


def parse_poly(text: str) -> Poly:
    if "|" not in text:
        raise ParseError("polynomial text needs 'tag | coefficients'")
    tag, _, coeffs = text.partition("|")
    tag = tag.strip()
    if tag == "Q":
        field: Field = QQ
    elif tag.startswith("Fq"):
        params = dict(
            part.split("=", 1) for part in tag[2:].split() if "=" in part
        )
        try:
            p = int(params["p"])
            k = int(params.get("k", "1"))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad polynomial field tag {tag!r}") from exc
        field = GF(p) if k == 1 else GF(p, k)
    else:
        raise ParseError(f"bad polynomial field tag {tag!r}")
    parts = [p.strip() for p in coeffs.strip().split(",")] if coeffs.strip() else []
    return Poly(field, [field.from_str(p) for p in parts if p != ""])


def poly_to_json(f: Poly) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "poly",
        "field": field_tag(f.field),
        "coeffs": [f.field.to_str(c) for c in f.coeffs],
        "text": f.pretty(),
    }


def poly_from_json(d: dict) -> Poly:
    _expect(d, "poly")
    field = field_from_tag(str(d["field"]))
    try:
        return Poly(field, [field.from_str(str(c)) for c in d["coeffs"]])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad poly json: {exc}") from exc


# -- triples ------------------------------------------------------------------------


def render_triple(t: Triple) -> str:
    return "\n".join(
        [render_matrix(t.a), render_matrix(t.v), render_matrix(t.phi)]
    )


def parse_triple(text: str) -> Triple:
    blocks = [b for b in text.split("\n\n") if b.strip()]
    if len(blocks) != 3:
        raise ParseError(f"triple text needs 3 blocks, got {len(blocks)}")
    a, v, phi = (parse_matrix(b) for b in blocks)
    try:
        return Triple(a, v, phi)
    except Exception as exc:
        raise ParseError(f"inconsistent triple blocks: {exc}") from exc


def triple_to_json(t: Triple) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "triple",
        "matrix": matrix_to_json(t.a),
        "vector": matrix_to_json(t.v),
        "functional": matrix_to_json(t.phi),
    }


def triple_from_json(d: dict) -> Triple:
    _expect(d, "triple")
    try:
        return Triple(
            matrix_from_json(d["matrix"]),
            matrix_from_json(d["vector"]),
            matrix_from_json(d["functional"]),
        )
    except KeyError as exc:
        raise ParseError(f"bad triple json: {exc}") from exc


# -- canonical forms ------------------------------------------------------------------


def frobenius_to_json(ff: FrobeniusForm) -> dict:
    F = ff.transform.field
    return {
        "schema": SCHEMA,
        "kind": "frobenius-form",
        "field": field_tag(F),
        "invariant_factors": [
            [F.to_str(c) for c in f.coeffs] for f in ff.invariant_factors
        ],
        "invariant_factors_text": [f.pretty() for f in ff.invariant_factors],
        "transform": matrix_to_json(ff.transform),
    }


def elementary_to_json(ed: ElementaryDivisorForm) -> dict:
    F = ed.transform.field
    return {
        "schema": SCHEMA,
        "kind": "elementary-divisor-form",
        "field": field_tag(F),
        "blocks": [
            {
                "irreducible": [F.to_str(c) for c in p.coeffs],
                "irreducible_text": p.pretty(),
                "exponent": e,
            }
            for p, e in ed.blocks
        ],
        "transform": matrix_to_json(ed.transform),
    }


def _expect(d: dict, kind: str) -> None:
    if not isinstance(d, dict):
        raise ParseError(f"expected a JSON object for {kind}")
    if d.get("kind") != kind:
        raise ParseError(f"expected kind {kind!r}, got {d.get('kind')!r}")


def dumps_canonical(obj: Any) -> str:
    """Stable JSON bytes: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
