"""JSON file formats for algebras, approximation spaces and frames, plus
derivation text files.

Algebra: ``{"size": n, "leq": [[a, b], ...], "neg": [[a, ~a], ...]}`` with
optional ``"name"`` and ``"elements"`` (element names). Pairs refer to
elements by index or, when ``elements`` is given, by name. ``leq`` is closed
reflexively and transitively; join and meet are derived.

Space: ``{"universe": [...], "blocks": [[...], ...]}``.

Frame: ``{"worlds": [...], "leq": [[x, y], ...], "C": [[x, y], ...]}``; ``leq``
gets its reflexive closure.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import FiniteKleeneAlgebra, FiniteLattice, StructureError
from .perp import CompatibilityFrame
from .roughsets import ApproximationSpace
from .syntax import Derivation, parse_derivation


class FormatError(ValueError):
    pass


def _read(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return data


def _dumps(data: dict) -> str:
    """One top-level field per line."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in data.items())
    return "{\n" + body + "\n}\n"


def _require(data: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in data]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")


# --------------------------------------------------------------------------
# algebras

def algebra_from_dict(data: dict) -> FiniteKleeneAlgebra:
    _require(data, "size", "leq", "neg")
    n = data["size"]
    if not isinstance(n, int) or n < 1:
        raise FormatError("size must be a positive integer")
    names = [str(x) for x in data.get("elements", range(n))]
    if len(names) != n or len(set(names)) != n:
        raise FormatError("elements must list size distinct names")
    lookup = {name: i for i, name in enumerate(names)}

    def ref(x) -> int:
        if isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n:
            return x
        if str(x) in lookup:
            return lookup[str(x)]
        raise FormatError(f"unknown element {x!r}")

    leq = np.eye(n, dtype=bool)
    for pair in data["leq"]:
        a, b = pair
        leq[ref(a), ref(b)] = True
    for k in range(n):  # transitive closure
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    neg = [-1] * n
    for a, b in data["neg"]:
        i = ref(a)
        if neg[i] not in (-1, ref(b)):
            raise FormatError(f"negation given twice for {names[i]}")
        neg[i] = ref(b)
    missing = [names[i] for i, v in enumerate(neg) if v == -1]
    if missing:
        raise FormatError(f"negation undefined on {', '.join(missing)}")
    try:
        L = FiniteLattice.from_order(leq, names=names)
    except StructureError as exc:
        raise FormatError(str(exc)) from None
    return FiniteKleeneAlgebra(L, neg, name=data.get("name"))


def algebra_to_dict(K) -> dict:
    """Covering pairs only; ``neg`` (or a Boolean complement) as pairs of names."""
    leq = np.asarray(K.leq)
    strict = leq & ~np.eye(K.size, dtype=bool)
    covers = strict & ~((strict.astype(int) @ strict.astype(int)) > 0)
    neg = getattr(K, "neg", None)
    if neg is None:
        neg = K.complement
    out = {"size": K.size, "elements": list(K.names),
           "leq": [[K.names[a], K.names[b]] for a, b in zip(*np.nonzero(covers))],
           "neg": [[K.names[a], K.names[int(neg[a])]] for a in range(K.size)]}
    if K.name:
        out = {"name": K.name, **out}
    return out


def load_algebra(path) -> FiniteKleeneAlgebra:
    return algebra_from_dict(_read(path))


def save_algebra(K, path) -> None:
    Path(path).write_text(_dumps(algebra_to_dict(K)))


# --------------------------------------------------------------------------
# spaces

def space_from_dict(data: dict) -> ApproximationSpace:
    _require(data, "universe", "blocks")
    return ApproximationSpace.from_blocks(data["blocks"], data["universe"])


def space_to_dict(space: ApproximationSpace) -> dict:
    return {"universe": list(space.universe), "blocks": [list(b) for b in space.blocks]}


def load_space(path) -> ApproximationSpace:
    return space_from_dict(_read(path))


def save_space(space: ApproximationSpace, path) -> None:
    Path(path).write_text(_dumps(space_to_dict(space)))


def parse_name_set(text: str) -> list[str]:
    """``"{1,2}"``, ``"1,2"`` or ``"{}"`` to a list of names."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    return [x.strip() for x in body.split(",") if x.strip()]


# --------------------------------------------------------------------------
# frames

def frame_from_dict(data: dict) -> CompatibilityFrame:
    _require(data, "worlds", "leq", "C")
    return CompatibilityFrame.from_pairs(data["worlds"], data["leq"], data["C"], data.get("name"))


def frame_to_dict(F: CompatibilityFrame) -> dict:
    return {"worlds": list(F.worlds), "leq": [list(p) for p in F.pairs(F.leq, strict=True)],
            "C": [list(p) for p in F.pairs(F.C)]}


def load_frame(path) -> CompatibilityFrame:
    return frame_from_dict(_read(path))


def save_frame(F: CompatibilityFrame, path) -> None:
    Path(path).write_text(_dumps(frame_to_dict(F)))


# --------------------------------------------------------------------------
# derivations

def load_derivation(path) -> Derivation:
    return parse_derivation(Path(path).read_text())


def save_derivation(d: Derivation, path) -> None:
    Path(path).write_text(d.to_text() + "\n")


def dump_json(data, path) -> None:
    Path(path).write_text(_dumps(data) if isinstance(data, dict) else json.dumps(data) + "\n")
