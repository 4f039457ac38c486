"""JSON algebra files and canonical report serialization."""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import GradedStarAlgebra, make_algebra
from .errors import InvalidParameters, NotAnInvolution
from .exactfield import CycScalar, parse_scalar
from .groups import (
    FiniteGroup,
    GroupInvolution,
    identity_involution,
    inversion_involution,
    make_group,
    validate_involution,
)

__all__ = ["algebra_from_dict", "algebra_to_dict", "load_algebra", "dump_algebra", "emit_report", "parse_tau"]


def parse_tau(G, spec):
    """tau from an index array, or the shorthands "id" and "inv"."""
    if spec is None or spec == "id":
        return identity_involution(G)
    if spec == "inv":
        return inversion_involution(G)
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise InvalidParameters(f"cannot read tau {spec!r}") from exc
    if not isinstance(spec, list) or not all(isinstance(x, int) for x in spec):
        raise InvalidParameters("tau must be an array of element indices")
    if len(spec) != G.order:
        raise NotAnInvolution(f"tau has {len(spec)} entries for a group of order {G.order}")
    return validate_involution(G, spec)


def _index(G, value, what):
    if isinstance(value, int) and not isinstance(value, bool):
        if 0 <= value < G.order:
            return value
    elif isinstance(value, str) and G.index(value) is not None:
        return G.index(value)
    raise InvalidParameters(f"bad {what} {value!r}")


def algebra_from_dict(doc, check=True):
    if not isinstance(doc, dict):
        raise InvalidParameters("algebra file must hold a JSON object")
    for key in ("group", "basis"):
        if key not in doc:
            raise InvalidParameters(f"algebra file is missing {key!r}")
    G = make_group(doc["group"])
    tau = parse_tau(G, doc.get("tau"))
    m = doc.get("cyclotomic_order", 1)
    if not isinstance(m, int) or m < 1:
        raise InvalidParameters("cyclotomic_order must be a positive integer")
    basis = doc["basis"]
    if not isinstance(basis, list):
        raise InvalidParameters("basis must be a list")
    labels, degrees = [], []
    for i, b in enumerate(basis):
        if isinstance(b, dict):
            labels.append(str(b.get("name", f"b{i}")))
            degrees.append(_index(G, b.get("degree", 0), "degree"))
        else:
            labels.append(f"b{i}")
            degrees.append(_index(G, b, "degree"))
    d = len(basis)

    def idx(v):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < d:
            raise InvalidParameters(f"basis index {v!r} out of range")
        return v

    def scalar(v):
        if isinstance(v, bool):
            raise InvalidParameters(f"bad scalar {v!r}")
        if isinstance(v, (int, str)):
            return parse_scalar(v, m) if isinstance(v, str) else CycScalar(v, m)
        if isinstance(v, float):
            raise InvalidParameters("floating point scalars are not accepted; use p/q")
        raise InvalidParameters(f"bad scalar {v!r}")

    products = []
    for entry in doc.get("products", []):
        if not isinstance(entry, list) or len(entry) != 4:
            raise InvalidParameters(f"product entry {entry!r} is not [i, j, k, scalar]")
        i, j, k, c = entry
        products.append((idx(i), idx(j), idx(k), scalar(c)))
    star = []
    for entry in doc.get("star", []):
        if not isinstance(entry, list) or len(entry) != 3:
            raise InvalidParameters(f"star entry {entry!r} is not [i, j, scalar]")
        i, j, c = entry
        star.append((idx(i), idx(j), scalar(c)))
    return make_algebra(G, tau, tuple(degrees), products, star, m, tuple(labels), check=check)


def algebra_to_dict(A: GradedStarAlgebra):
    products = [
        [i, j, k, str(c)] for (i, j), terms in sorted(A.structconst.items()) for k, c in terms
    ]
    star = []
    for i, row in enumerate(A.star.sparse_rows()):
        for j in sorted(row):
            if row[j]:
                star.append([i, j, str(row[j])])
    return {
        "group": A.group.to_spec(),
        "tau": list(A.tau.map),
        "cyclotomic_order": A.cyclo_order,
        "basis": [{"name": n, "degree": g} for n, g in zip(A.basis_labels, A.degree)],
        "products": products,
        "star": star,
    }


def load_algebra(path, check=True):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidParameters(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return algebra_from_dict(doc, check=check)


def dump_algebra(A, path=None):
    text = emit_report(algebra_to_dict(A))
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _plain(obj):
    if isinstance(obj, (CycScalar, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (FiniteGroup, GroupInvolution)):
        return repr(obj)
    return obj


def emit_report(result):
    """Canonical JSON: sorted keys, scalars as literals, trailing newline."""
    return json.dumps(_plain(result), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
