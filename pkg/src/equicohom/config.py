"""
Surface-action documents.

A document describes a finite group action on a rational surface in
standard form through the quotient-side combinatorics only: the orbits of
curves with nontrivial inertia (inertia order ``d``, genus of the quotient
curve), the orbits of points where they meet, and how many branches of
each quotient curve pass over each point orbit.

Documents are JSON::

    {
      "group": {"abelian": [3, 3]},
      "has_fixed_point": true,
      "curves": [{"id": "E1", "d": 3, "g_quotient": 0}, ...],
      "points": [{"id": "p1", "fixed_by_G": true}, ...],
      "incidences": [["p1", "E1", 1], ...],
      "metadata": "free text"
    }

Lines of ``metadata`` of the form ``@key: <json>`` are machine-readable
annotations (see :attr:`ActionConfig.annotations`); fixtures use
``@expect.<name>`` keys to record the values they are known to produce.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Any

from .finabelian import Subgroup
from .groupcoh import FiniteGroupSpec, UnknownGroupError

__all__ = [
    "ConfigError",
    "Decomposition",
    "Residual",
    "CurveClass",
    "PointOrbit",
    "Incidence",
    "ActionConfig",
    "StandardFormWarning",
    "parse",
    "load",
    "serialize",
    "to_document",
    "validate_standard_form",
]


class ConfigError(ValueError):
    """A document failed schema or invariant checks.

    ``problems`` lists one message per offending field.
    """

    def __init__(self, problems: list[str] | str, source: str | None = None):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(prefix + "; ".join(self.problems))


@dataclass(frozen=True)
class Decomposition:
    """Decomposition group ``D`` (generators) with a distinguished inertia generator.

    Coordinates are with respect to the abelian factor list of the group.
    The inertia generator is the element acting on the normal direction of
    the curve by the chosen primitive root of unity.
    """

    generators: tuple[tuple[int, ...], ...]
    inertia: tuple[int, ...]


@dataclass(frozen=True)
class Residual:
    """Label for the action of ``D/I`` on the curve."""

    order: int
    cyclic: bool
    label: str = ""
    curve_label: str = ""


@dataclass(frozen=True)
class CurveClass:
    id: str
    d: int
    g_quotient: int
    g_upstairs: int | None = None
    normal_character: int | None = None
    decomposition: Decomposition | None = None
    residual: Residual | None = None
    monodromy: dict[str, tuple[int, ...]] | None = None


@dataclass(frozen=True)
class PointOrbit:
    id: str
    fixed_by_G: bool | None = None


@dataclass(frozen=True)
class Incidence:
    point: str
    curve: str
    branches: int = 1


@dataclass(frozen=True)
class ActionConfig:
    group: FiniteGroupSpec
    has_fixed_point: bool
    curves: tuple[CurveClass, ...] = ()
    points: tuple[PointOrbit, ...] = ()
    incidences: tuple[Incidence, ...] = ()
    metadata: str = ""

    @property
    def is_cyclic(self) -> bool:
        return self.group.is_cyclic

    def curve(self, curve_id: str) -> CurveClass:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise KeyError(curve_id)

    def incidences_of_curve(self, curve_id: str) -> list[Incidence]:
        """Incidences on a curve, in the order of the point list."""
        order = {p.id: k for k, p in enumerate(self.points)}
        inc = [i for i in self.incidences if i.curve == curve_id]
        return sorted(inc, key=lambda i: order[i.point])

    @property
    def annotations(self) -> dict[str, Any]:
        """``@key: value`` lines of the metadata, values decoded as JSON."""
        out: dict[str, Any] = {}
        for line in self.metadata.splitlines():
            line = line.strip()
            if not line.startswith("@") or ":" not in line:
                continue
            key, _, raw = line[1:].partition(":")
            try:
                out[key.strip()] = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"metadata annotation {key.strip()!r}: {exc.msg}") from None
        return out

    @property
    def expectations(self) -> dict[str, Any]:
        return {k[len("expect."):]: v for k, v in self.annotations.items() if k.startswith("expect.")}


# ---------------------------------------------------------------------------
# parsing

_TOP_KEYS = {"group", "has_fixed_point", "curves", "points", "incidences", "metadata"}
_CURVE_KEYS = {"id", "d", "g_quotient", "g_upstairs", "normal_character",
               "decomposition", "residual", "monodromy"}
_POINT_KEYS = {"id", "fixed_by_G"}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _coords(x, n: int, where: str, problems: list[str]) -> tuple[int, ...] | None:
    if not isinstance(x, list) or len(x) != n or not all(_is_int(v) for v in x):
        problems.append(f"{where}: expected a list of {n} integers")
        return None
    return tuple(x)


def _parse_group(raw, problems) -> FiniteGroupSpec | None:
    if not isinstance(raw, dict) or len(raw) != 1 or not ({"abelian", "named"} & raw.keys()):
        problems.append('group: expected {"abelian": [...]} or {"named": "..."}')
        return None
    try:
        if "abelian" in raw:
            f = raw["abelian"]
            if not isinstance(f, list) or not all(_is_int(m) for m in f):
                problems.append("group.abelian: expected a list of integers")
                return None
            return FiniteGroupSpec(abelian=tuple(f))
        return FiniteGroupSpec(name=raw["named"])
    except UnknownGroupError as exc:
        problems.append(f"group.named: {exc}")
    except ValueError as exc:
        problems.append(f"group: {exc}")
    return None


def _parse_curve(raw, k: int, group: FiniteGroupSpec | None, problems) -> CurveClass | None:
    where = f"curves[{k}]"
    if not isinstance(raw, dict):
        problems.append(f"{where}: expected an object")
        return None
    unknown = raw.keys() - _CURVE_KEYS
    if unknown:
        problems.append(f"{where}: unknown keys {sorted(unknown)}")
    for key in ("id", "d", "g_quotient"):
        if key not in raw:
            problems.append(f"{where}: missing required key {key!r}")
    if any(key not in raw for key in ("id", "d", "g_quotient")):
        return None
    cid, d, gq = raw["id"], raw["d"], raw["g_quotient"]
    where = f"curve {cid!r}"
    ok = True
    if not isinstance(cid, str) or not cid:
        problems.append(f"{where}: id must be a nonempty string")
        ok = False
    if not _is_int(d):
        problems.append(f"{where}: d must be an integer")
        ok = False
    elif d == 1:
        problems.append(f"{where}: trivial inertia not allowed (d = 1)")
        ok = False
    elif d < 2:
        problems.append(f"{where}: inertia order must be >= 2, got {d}")
        ok = False
    elif group is not None and group.order % d:
        problems.append(f"{where}: inertia order {d} does not divide |G| = {group.order}")
        ok = False
    if not _is_int(gq) or gq < 0:
        problems.append(f"{where}: g_quotient must be a nonnegative integer")
        ok = False
    gu = raw.get("g_upstairs")
    if gu is not None and (not _is_int(gu) or gu < 0):
        problems.append(f"{where}: g_upstairs must be a nonnegative integer")
        ok = False
    beta = raw.get("normal_character")
    if beta is not None:
        if not _is_int(beta):
            problems.append(f"{where}: normal_character must be an integer")
            ok = False
        elif _is_int(d) and d >= 2:
            if gcd(beta, d) != 1:
                problems.append(f"{where}: normal_character {beta} is not a unit mod {d}")
                ok = False
            else:
                beta %= d

    decomposition = None
    if "decomposition" in raw:
        decomposition = _parse_decomposition(raw["decomposition"], where, group, d, problems)
        ok = ok and decomposition is not None
    residual = None
    if "residual" in raw:
        residual = _parse_residual(raw["residual"], where, problems)
        ok = ok and residual is not None
    monodromy = None
    if "monodromy" in raw:
        mono = raw["monodromy"]
        if group is None or not group.is_abelian:
            problems.append(f"{where}: monodromy needs an abelian group")
            ok = False
        elif not isinstance(mono, dict):
            problems.append(f"{where}: monodromy must map point ids to coordinates")
            ok = False
        else:
            monodromy = {}
            for pid, x in mono.items():
                c = _coords(x, len(group.abelian), f"{where}.monodromy[{pid!r}]", problems)
                if c is None:
                    ok = False
                else:
                    monodromy[pid] = tuple(v % m for v, m in zip(c, group.abelian))
    if not ok:
        return None
    return CurveClass(cid, d, gq, gu, beta, decomposition, residual, monodromy)


def _parse_decomposition(raw, where, group, d, problems) -> Decomposition | None:
    where = f"{where}.decomposition"
    if group is None or not group.is_abelian:
        problems.append(f"{where}: decomposition data needs an abelian group")
        return None
    if not isinstance(raw, dict) or set(raw) != {"generators", "inertia"}:
        problems.append(f'{where}: expected keys "generators" and "inertia"')
        return None
    n = len(group.abelian)
    if not isinstance(raw["generators"], list) or not raw["generators"]:
        problems.append(f"{where}.generators: expected a nonempty list")
        return None
    gens = [_coords(x, n, f"{where}.generators", problems) for x in raw["generators"]]
    inertia = _coords(raw["inertia"], n, f"{where}.inertia", problems)
    if inertia is None or any(g is None for g in gens):
        return None
    gens = [tuple(v % m for v, m in zip(g, group.abelian)) for g in gens]
    inertia = tuple(v % m for v, m in zip(inertia, group.abelian))
    if Subgroup(group.abelian, [inertia]).order() != d:
        problems.append(f"{where}: inertia generator {list(inertia)} does not have order d = {d}")
        return None
    if not Subgroup(group.abelian, gens).contains(inertia):
        problems.append(f"{where}: inertia generator is not in the decomposition group")
        return None
    return Decomposition(tuple(gens), inertia)


def _parse_residual(raw, where, problems) -> Residual | None:
    where = f"{where}.residual"
    if not isinstance(raw, dict):
        problems.append(f"{where}: expected an object")
        return None
    unknown = raw.keys() - {"order", "cyclic", "label", "curve_label"}
    if unknown:
        problems.append(f"{where}: unknown keys {sorted(unknown)}")
        return None
    order, cyclic = raw.get("order"), raw.get("cyclic")
    if not _is_int(order) or order < 1:
        problems.append(f"{where}.order: expected a positive integer")
        return None
    if not isinstance(cyclic, bool):
        problems.append(f"{where}.cyclic: expected a boolean")
        return None
    label, curve_label = raw.get("label", ""), raw.get("curve_label", "")
    if not isinstance(label, str) or not isinstance(curve_label, str):
        problems.append(f"{where}: labels must be strings")
        return None
    return Residual(order, cyclic, label, curve_label)


def parse(document: str | dict, source: str | None = None) -> ActionConfig:
    """Parse and validate a configuration document (JSON text or decoded dict)."""
    if isinstance(document, (str, bytes)):
        try:
            raw = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                              source) from None
    else:
        raw = document
    problems: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object", source)
    unknown = raw.keys() - _TOP_KEYS
    if unknown:
        problems.append(f"unknown top-level keys {sorted(unknown)}")
    for key in ("group", "has_fixed_point"):
        if key not in raw:
            problems.append(f"missing required key {key!r}")
    group = _parse_group(raw["group"], problems) if "group" in raw else None
    has_fixed = raw.get("has_fixed_point")
    if "has_fixed_point" in raw and not isinstance(has_fixed, bool):
        problems.append("has_fixed_point: expected a boolean")

    curves = []
    raw_curves = raw.get("curves", [])
    if not isinstance(raw_curves, list):
        problems.append("curves: expected a list")
        raw_curves = []
    for k, rc in enumerate(raw_curves):
        c = _parse_curve(rc, k, group, problems)
        if c is not None:
            curves.append(c)

    points = []
    raw_points = raw.get("points", [])
    if not isinstance(raw_points, list):
        problems.append("points: expected a list")
        raw_points = []
    for k, rp in enumerate(raw_points):
        if not isinstance(rp, dict) or "id" not in rp:
            problems.append(f"points[{k}]: expected an object with an id")
            continue
        if rp.keys() - _POINT_KEYS:
            problems.append(f"points[{k}]: unknown keys {sorted(rp.keys() - _POINT_KEYS)}")
            continue
        if not isinstance(rp["id"], str) or not rp["id"]:
            problems.append(f"points[{k}]: id must be a nonempty string")
            continue
        fixed = rp.get("fixed_by_G")
        if fixed is not None and not isinstance(fixed, bool):
            problems.append(f"point {rp['id']!r}: fixed_by_G must be a boolean")
            continue
        points.append(PointOrbit(rp["id"], fixed))

    ids = [c.id for c in curves] + [p.id for p in points]
    seen = set()
    for i in ids:
        if i in seen:
            problems.append(f"duplicate id {i!r}")
        seen.add(i)
    curve_ids = {c.id for c in curves}
    point_ids = {p.id for p in points}

    incidences = []
    raw_inc = raw.get("incidences", [])
    if not isinstance(raw_inc, list):
        problems.append("incidences: expected a list")
        raw_inc = []
    pairs = set()
    for k, ri in enumerate(raw_inc):
        if (not isinstance(ri, list) or len(ri) != 3 or not isinstance(ri[0], str)
                or not isinstance(ri[1], str) or not _is_int(ri[2])):
            problems.append(f"incidences[{k}]: expected [point_id, curve_id, branches]")
            continue
        pid, cid, br = ri
        if pid not in point_ids:
            problems.append(f"incidences[{k}]: dangling reference to point {pid!r}")
            continue
        if cid not in curve_ids and not any(cid == rc.get("id") for rc in raw_curves
                                             if isinstance(rc, dict)):
            problems.append(f"incidences[{k}]: dangling reference to curve {cid!r}")
            continue
        if br < 1:
            problems.append(f"incidences[{k}]: branches must be >= 1")
            continue
        if (pid, cid) in pairs:
            problems.append(f"incidences[{k}]: duplicate incidence ({pid!r}, {cid!r})")
            continue
        pairs.add((pid, cid))
        incidences.append(Incidence(pid, cid, br))

    for c in curves:
        if c.monodromy:
            for pid in c.monodromy:
                if (pid, c.id) not in pairs:
                    problems.append(f"curve {c.id!r}: monodromy given at {pid!r}, which is not on the curve")
        if c.decomposition is not None and c.residual is not None:
            dorder = Subgroup(group.abelian, c.decomposition.generators).order()
            if c.residual.order * c.d != dorder:
                problems.append(
                    f"curve {c.id!r}: residual order {c.residual.order} != |D|/d = {dorder // c.d}"
                )

    metadata = raw.get("metadata", "")
    if not isinstance(metadata, str):
        problems.append("metadata: expected a string")
        metadata = ""
    if group is not None and group.is_cyclic and has_fixed is False:
        problems.append("has_fixed_point: a cyclic group always has a fixed point")
    if problems:
        raise ConfigError(problems, source)
    config = ActionConfig(group, has_fixed, tuple(curves), tuple(points), tuple(incidences), metadata)
    config.annotations  # surfaces malformed annotations at parse time
    return config


def load(path: str | Path) -> ActionConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read: {exc.strerror}", str(path)) from None
    return parse(text, source=str(path))


def to_document(c: ActionConfig) -> dict:
    group = {"abelian": list(c.group.abelian)} if c.group.is_abelian else {"named": c.group.name}
    curves = []
    for cv in c.curves:
        doc: dict[str, Any] = {"id": cv.id, "d": cv.d, "g_quotient": cv.g_quotient}
        if cv.g_upstairs is not None:
            doc["g_upstairs"] = cv.g_upstairs
        if cv.normal_character is not None:
            doc["normal_character"] = cv.normal_character
        if cv.decomposition is not None:
            doc["decomposition"] = {
                "generators": [list(g) for g in cv.decomposition.generators],
                "inertia": list(cv.decomposition.inertia),
            }
        if cv.residual is not None:
            r = {"order": cv.residual.order, "cyclic": cv.residual.cyclic}
            if cv.residual.label:
                r["label"] = cv.residual.label
            if cv.residual.curve_label:
                r["curve_label"] = cv.residual.curve_label
            doc["residual"] = r
        if cv.monodromy is not None:
            doc["monodromy"] = {k: list(v) for k, v in cv.monodromy.items()}
        curves.append(doc)
    points = []
    for p in c.points:
        doc = {"id": p.id}
        if p.fixed_by_G is not None:
            doc["fixed_by_G"] = p.fixed_by_G
        points.append(doc)
    return {
        "group": group,
        "has_fixed_point": c.has_fixed_point,
        "curves": curves,
        "points": points,
        "incidences": [[i.point, i.curve, i.branches] for i in c.incidences],
        "metadata": c.metadata,
    }


def serialize(c: ActionConfig) -> str:
    return json.dumps(to_document(c), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# standard-form diagnostics

@dataclass(frozen=True)
class StandardFormWarning:
    code: str
    message: str

    def __str__(self) -> str:
        return self.message


def validate_standard_form(c: ActionConfig) -> list[StandardFormWarning]:
    """Flag encodings the point-sum criterion cannot certify.  Never raises."""
    out = []
    touched = {i.point for i in c.incidences}
    for p in c.points:
        if p.id not in touched:
            out.append(StandardFormWarning(
                "isolated-point", f"point {p.id!r}: point imposes no constraint (no incidences)"))
    for i in c.incidences:
        if i.branches > 2:
            out.append(StandardFormWarning(
                "multi-branch",
                f"incidence ({i.point!r}, {i.curve!r}) has {i.branches} branches: "
                "verify normal-crossing encoding"))
    return out
