"""Text and JSON codecs shared by the CLI and the test suite.

Polynomials are comma-separated coefficient encodings, constant term
first ("2,2,1" is x^2+2x+2 over F_3).  Fields are "q" or "p^k".
Partitions are part^mult terms joined by "+" ("1^2+3^4").  Class data
is {"q": "3", "n": 2, "entries": [{"poly": "...", "partition": "..."}]}
with every count rendered as a decimal string.
"""

from __future__ import annotations

from .ffpoly import Field, Poly, field_from_order, field_make, is_irreducible, make_poly
from .gl_classes import ClassData, make_class_data
from .limits import InputError
from .partitions import Partition


def field_to_text(field: Field) -> str:
    return str(field.q)


def field_from_text(text: str) -> Field:
    text = text.strip()
    try:
        if "^" in text:
            p_str, k_str = text.split("^", 1)
            return field_make(int(p_str), int(k_str))
        return field_from_order(int(text))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad field spec {text!r}") from exc


def poly_to_text(f: Poly) -> str:
    return ",".join(str(c) for c in f.coeffs)


def poly_from_text(field: Field, text: str) -> Poly:
    try:
        coeffs = [int(part) for part in text.strip().split(",")]
    except ValueError as exc:
        raise InputError(f"bad polynomial string {text!r}") from exc
    return make_poly(field, coeffs)


def partition_to_text(lam: Partition) -> str:
    if lam.is_empty():
        raise InputError("refusing to serialize the empty partition")
    return "+".join(f"{a}^{m}" for a, m in lam.pairs)


def partition_from_text(text: str) -> Partition:
    pairs = []
    for term in text.strip().split("+"):
        term = term.strip()
        if not term:
            raise InputError(f"bad partition string {text!r}")
        try:
            if "^" in term:
                a_str, m_str = term.split("^", 1)
                pairs.append((int(a_str), int(m_str)))
            else:
                pairs.append((int(term), 1))
        except ValueError as exc:
            raise InputError(f"bad partition string {text!r}") from exc
    pairs.sort()
    try:
        return Partition(tuple(pairs))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def class_data_to_json(data: ClassData) -> dict:
    return {
        "q": str(data.field.q),
        "n": data.n,
        "entries": [
            {"poly": poly_to_text(f), "partition": partition_to_text(lam)}
            for f, lam in data.entries
        ],
    }


def class_data_from_json(obj: dict, field: Field | None = None) -> ClassData:
    """Parse class data; polynomial keys are fully validated, including
    irreducibility, since this is the untrusted path."""
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError("class data must be an object with an 'entries' list")
    if field is None:
        if "q" not in obj:
            raise InputError("class data needs a 'q' when no field is given")
        field = field_from_text(str(obj["q"]))
    elif "q" in obj and field_from_text(str(obj["q"])) != field:
        raise InputError("class data 'q' contradicts the requested field")
    entries = []
    for item in obj["entries"]:
        f = poly_from_text(field, item["poly"])
        if not f.is_monic() or f.degree < 1 or f.constant_term() == 0:
            raise InputError(f"bad class polynomial {item['poly']!r}")
        if not is_irreducible(f):
            raise InputError(f"class polynomial {item['poly']!r} is not irreducible")
        entries.append((f, partition_from_text(item["partition"])))
    data = make_class_data(field, entries)
    if "n" in obj and int(obj["n"]) != data.n:
        raise InputError(f"declared n = {obj['n']} but the data has weight {data.n}")
    return data
