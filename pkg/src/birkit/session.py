"""Session files: a variety, named maps and options in one JSON document.

    {"field": "QQ", "vars": ["x", "y", "z"], "ideal": ["y^2 - x*z"],
     "maps": {"sigma1": {"degree": 2, "forms": ["y*z", "x*z", "x*y"]}},
     "options": {"max_pairs": 50000, "seed": 7}}
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra.field import FieldSpec
from .algebra.poly import PolyRingCtx
from .birational import RationalMap
from .errors import HomogeneityError, InputError, IoError, PreconditionViolated, SchemaError
from .groebner import Limits
from .invariants import VarietyPresentation

OPTION_KEYS = {"max_degree": int, "max_pairs": int, "seed": int, "trials": int, "cap": int,
               "prime": int}
TOP_KEYS = {"field", "vars", "ideal", "maps", "options", "name"}


@dataclass
class Session:
    variety: VarietyPresentation
    maps: dict
    options: dict = field(default_factory=dict)
    name: str | None = None
    source: str | None = None

    def get_map(self, name: str) -> RationalMap:
        try:
            return self.maps[name]
        except KeyError:
            known = ", ".join(sorted(self.maps)) or "none"
            raise InputError(f"no map named {name!r} in session (available: {known})") from None

    def to_dict(self) -> dict:
        V = self.variety
        out = {}
        if self.name:
            out["name"] = self.name
        out["field"] = str(V.ring.field)
        out["vars"] = list(V.ring.variables)
        out["ideal"] = [str(g) for g in V.ideal.generators]
        out["maps"] = {k: {"degree": h.degree, "forms": [str(f) for f in h.forms]}
                       for k, h in self.maps.items()}
        if self.options:
            out["options"] = dict(self.options)
        return out

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _expect(cond, path, message):
    if not cond:
        raise SchemaError(path, message)


def session_from_dict(data, limits: Limits | None = None, source: str | None = None) -> Session:
    _expect(isinstance(data, dict), "$", "session must be a JSON object")
    unknown = set(data) - TOP_KEYS
    _expect(not unknown, "$", f"unknown keys {sorted(unknown)}")
    for key in ("field", "vars"):
        _expect(key in data, f"$.{key}", "required")
    _expect(isinstance(data["field"], str), "$.field", "must be a string like \"QQ\" or \"GF(101)\"")
    try:
        fld = FieldSpec.parse(data["field"])
    except (InputError, ValueError) as exc:
        raise SchemaError("$.field", str(exc)) from None
    variables = data["vars"]
    _expect(isinstance(variables, list) and variables, "$.vars", "must be a non-empty list")
    for i, v in enumerate(variables):
        _expect(isinstance(v, str) and v.isidentifier(), f"$.vars[{i}]", "must be a variable name")
    _expect(len(set(variables)) == len(variables), "$.vars", "duplicate variable names")

    options = data.get("options", {})
    _expect(isinstance(options, dict), "$.options", "must be an object")
    for k, v in options.items():
        _expect(k in OPTION_KEYS, f"$.options.{k}", "unknown option")
        _expect(isinstance(v, int) and not isinstance(v, bool) and v >= 0, f"$.options.{k}",
                "must be a non-negative integer")
    if limits is None:
        limits = Limits.from_env(max_degree=options.get("max_degree"), max_pairs=options.get("max_pairs"))

    ring = PolyRingCtx(variables, fld)
    ideal = data.get("ideal", [])
    _expect(isinstance(ideal, list), "$.ideal", "must be a list of polynomial strings")
    gens = []
    for i, text in enumerate(ideal):
        _expect(isinstance(text, str), f"$.ideal[{i}]", "must be a string")
        g = ring.parse(text)
        if not g.is_homogeneous():
            raise HomogeneityError(f"$.ideal[{i}]: {text!r} is not homogeneous")
        gens.append(g)
    V = VarietyPresentation(ring, gens, limits, name=data.get("name"))

    maps = {}
    raw_maps = data.get("maps", {})
    _expect(isinstance(raw_maps, dict), "$.maps", "must be an object")
    for name, spec in raw_maps.items():
        path = f"$.maps.{name}"
        _expect(isinstance(spec, dict), path, "must be an object")
        _expect(set(spec) <= {"degree", "forms"}, path, "only 'degree' and 'forms' are allowed")
        _expect("forms" in spec and isinstance(spec["forms"], list), f"{path}.forms", "required list")
        deg = spec.get("degree")
        _expect(isinstance(deg, int) and not isinstance(deg, bool) and deg >= 0, f"{path}.degree",
                "required non-negative integer")
        forms = []
        for i, text in enumerate(spec["forms"]):
            _expect(isinstance(text, str), f"{path}.forms[{i}]", "must be a string")
            f = ring.parse(text)
            if f and (not f.is_homogeneous() or f.degree != deg):
                raise HomogeneityError(f"map {name!r}: form {text!r} is not homogeneous of degree {deg}")
            forms.append(f)
        try:
            maps[name] = RationalMap(V, forms, name=name)
        except PreconditionViolated as exc:
            raise InputError(f"map {name!r}: {exc}") from None
    return Session(V, maps, dict(options), data.get("name"), source)


def load_session(path, limits: Limits | None = None) -> Session:
    """Read and validate a session file; the ideal's Groebner basis is computed eagerly."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    session = session_from_dict(data, limits, source=str(p))
    session.variety.gb
    return session


def dump_session(session: Session, path=None) -> str:
    text = json.dumps(session.to_dict(), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture (``conic``, ``cusp``, ``veronese``, ``p2``, ``p1``)."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("birkit") / "fixtures" / name))


def load_fixture(name: str, limits: Limits | None = None) -> Session:
    return load_session(fixture_path(name), limits)
