"""Command-line front door: config parsing, dispatch, deterministic reports.

Configs are schema-validated JSON (unknown keys rejected, errors carry a
JSON pointer); every artifact is emitted through one canonical writer
(sorted keys, floats at 17 significant digits) so reruns are byte
identical.  Exit codes: 0 success, 1 error, 2 for a verdict that
contradicts the shipped theoretical predictions -- CI can tell a bug from
a mathematical surprise.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import jsonschema

from . import dynamics as dy
from . import forms as fm
from . import lattice as lt
from . import numberfield as nf
from . import sadic as sd
from .errors import SadicLabError, SchemaError
from .surd import QuadraticSurd

DEFAULT_PRECISION = 50
DEFAULT_H = 50
DEFAULT_E = 5
DEFAULT_HENSEL = 30

_BLOCK_SCHEMAS = {
    "systole": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "diagonal_flow": {
                "type": "object", "additionalProperties": False,
                "properties": {"values": {"type": "array",
                                          "items": {"type": "number"}}},
                "required": ["values"],
            },
            "matrices": {"type": "array"},
        },
    },
    "mahler": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "radius": {"type": "number", "exclusiveMinimum": 0},
            "diagonal_flow": {
                "type": "object", "additionalProperties": False,
                "properties": {"values": {"type": "array",
                                          "items": {"type": "number"}}},
                "required": ["values"],
            },
            "matrices_list": {"type": "array"},
        },
        "required": ["radius"],
    },
    "orbit_survey": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "point": {"type": "string"},
            "active_places": {"type": "array", "items": {"type": "string"}},
            "steps": {"type": "integer", "minimum": 10},
            "grid": {"type": "string"},
            "expect": {"type": "object"},
        },
    },
    "nilpotent_check": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "n": {"type": "integer", "minimum": 2, "maximum": 4},
            "radius": {"type": "number", "exclusiveMinimum": 0},
            "matrices": {"type": "array"},
        },
        "required": ["radius"],
    },
    "expanding": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "positions": {"type": "array",
                          "items": {"type": "array", "minItems": 2,
                                    "maxItems": 2,
                                    "items": {"type": "integer"}}},
            "tau": {"type": "number", "exclusiveMinimum": 1},
            "place": {"type": "string"},
        },
        "required": ["positions", "tau", "place"],
    },
    "form": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "places": {"type": "array", "items": {"type": "string"}},
            "factors": {"type": "array"},
            "factors_per_place": {"type": "array"},
            "builtin": {"type": "string"},
            "norm_field": {
                "type": "object", "additionalProperties": False,
                "properties": {
                    "min_poly": {"type": "array",
                                 "items": {"type": "integer"}},
                    "basis": {"type": "array"},
                },
                "required": ["min_poly"],
            },
        },
    },
    "spectrum": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "heights": {"type": "array", "items": {"type": "integer"},
                        "minItems": 1},
            "cap": {"type": "number"},
            "denominator_exponent": {"type": "integer", "minimum": 0},
        },
        "required": ["heights"],
    },
    "littlewood": {
        "type": "object", "additionalProperties": False,
        "properties": {
            "alpha": {}, "beta": {},
            "N": {"type": "integer", "minimum": 1, "maximum": 10 ** 9},
        },
        "required": ["alpha", "beta", "N"],
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["min_poly"],
    "properties": {
        "min_poly": {"type": "array", "items": {"type": "integer"},
                     "minItems": 2},
        "integral_basis": {"type": "array"},
        "places": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "archimedean": {"const": "all"},
                "finite_primes": {"type": "array",
                                  "items": {"type": "integer", "minimum": 2}},
            },
        },
        "s_units": {"type": "array"},
        "precision": {"type": "integer", "minimum": 15},
        "window": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "H": {"type": "integer", "minimum": 1},
                "E": {"type": "integer", "minimum": 0},
                "cap": {"type": "integer", "minimum": 1},
            },
        },
        "hensel_precision": {"type": "integer", "minimum": 2},
        **_BLOCK_SCHEMAS,
    },
}


@dataclass
class RunConfig:
    raw: dict
    field: object
    places: list
    precision: int
    window: lt.HeightWindow
    hensel_precision: int
    s_units_supplied: object

    def place_by_name(self, name):
        for p in self.places:
            if p.name == name:
                return p
        raise SchemaError("/places", f"unknown place name {name!r}")

    def block(self, name):
        return self.raw.get(name, {})


def parse_config(source):
    """Validate and build a RunConfig from a path or inline JSON string."""
    if isinstance(source, dict):
        raw = source
    else:
        text = source
        if not text.lstrip().startswith("{"):
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError("/", f"invalid JSON: {e}") from e
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as e:
        pointer = "/" + "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(pointer, e.message) from e
    try:
        field = nf.create_field(raw["min_poly"], raw.get("integral_basis"))
    except SadicLabError as e:
        raise SchemaError("/min_poly", str(e)) from e
    precision = raw.get("precision", DEFAULT_PRECISION)
    hensel = raw.get("hensel_precision", DEFAULT_HENSEL)
    places = nf.archimedean_places(field)
    for i, p in enumerate(raw.get("places", {}).get("finite_primes", [])):
        try:
            places.extend(nf.finite_places(field, p, precision=hensel))
        except SadicLabError as e:
            raise SchemaError(f"/places/finite_primes/{i}", str(e)) from e
    wraw = raw.get("window", {})
    window = lt.HeightWindow(wraw.get("H", DEFAULT_H), wraw.get("E", DEFAULT_E),
                             wraw.get("cap", 10 ** 8))
    return RunConfig(raw=raw, field=field, places=places, precision=precision,
                     window=window, hensel_precision=hensel,
                     s_units_supplied=raw.get("s_units"))


# ---------------------------------------------------------------------------
# Canonical emission


def _fmt_float(x):
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return f"{x:.17g}"


def _canon_json(obj):
    if isinstance(obj, dict):
        items = ",".join(f"{json.dumps(str(k))}:{_canon_json(v)}"
                         for k, v in sorted(obj.items(), key=lambda kv: str(kv[0])))
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canon_json(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    return json.dumps(str(obj))


def emit_report(result, fmt="json"):
    """Byte-stable serialization of a report.

    JSON: sorted keys, floats at 17 significant digits.  CSV expects
    (header, rows) with cells already scalar.
    """
    if fmt == "json":
        return (_canon_json(result) + "\n").encode("utf-8")
    if fmt == "csv":
        header, rows = result
        lines = [",".join(header)]
        for row in rows:
            cells = []
            for cell in row:
                if isinstance(cell, float):
                    cells.append(_fmt_float(cell))
                elif isinstance(cell, (int, Fraction)):
                    cells.append(str(cell))
                else:
                    text = str(cell)
                    if "," in text or '"' in text:
                        text = '"' + text.replace('"', '""') + '"'
                    cells.append(text)
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _write(outdir, name, data):
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, name)
    with open(path, "wb") as fh:
        fh.write(data)
    return path


# ---------------------------------------------------------------------------
# Shared builders


def _parse_scalar(c):
    if isinstance(c, bool):
        raise SchemaError("/form", "boolean is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, float):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, dict):
        return QuadraticSurd(Fraction(str(c.get("a", 0))),
                             Fraction(str(c.get("b", 0))),
                             int(c.get("d", 1)))
    raise SchemaError("/form", f"cannot parse coefficient {c!r}")


def _build_form(cfg):
    block = cfg.block("form")
    if not block:
        raise SchemaError("/form", "missing form block")
    if "builtin" in block:
        probes = fm.builtin_probes()
        name = block["builtin"]
        if name not in probes:
            raise SchemaError("/form/builtin",
                              f"unknown probe {name!r}; have {sorted(probes)}")
        return probes[name]
    if "norm_field" in block:
        nfld = block["norm_field"]
        target = nf.create_field(nfld["min_poly"])
        basis = nfld.get("basis")
        elems = None
        if basis is not None:
            elems = [target.element([Fraction(str(c)) for c in row])
                     for row in basis]
        return fm.norm_form(target, elems)
    names = block.get("places")
    places = [cfg.place_by_name(n) for n in names] if names else list(cfg.places)
    if "factors_per_place" in block:
        per_place = [[[_parse_scalar(c) for c in row] for row in rows]
                     for rows in block["factors_per_place"]]
    elif "factors" in block:
        rows = [[_parse_scalar(c) for c in row] for row in block["factors"]]
        per_place = [rows for _ in places]
    else:
        raise SchemaError("/form", "need factors, builtin or norm_field")
    return fm.make_form(cfg.field, places, per_place)


def _diag_flow_lattices(cfg, values, n):
    arch = [p for p in cfg.places if p.kind != "finite"]
    if not arch:
        raise SchemaError("/places", "diagonal flow needs an archimedean place")
    lats = []
    for s in values:
        mats = []
        for place in cfg.places:
            if place is arch[0]:
                diag = [math.exp(s) if i == 0 else
                        (math.exp(-s) if i == n - 1 else 1.0)
                        for i in range(n)]
            else:
                diag = [1] * n
            mats.append([[diag[i] if i == j else
                          (0 if place.kind == "finite" else 0.0)
                          for j in range(n)] for i in range(n)])
        lats.append(lt.SLattice(cfg.field, cfg.places, n, mats))
    return lats


def _parse_matrix(rows):
    return [[_parse_scalar(c) for c in row] for row in rows]


def _point_from_spec(cfg, spec, n=2):
    if spec == "identity":
        return dy.OrbitPoint.identity(cfg.field, cfg.places, n)
    if spec.startswith("rational:"):
        body = spec[len("rational:"):]
        rows = [[Fraction(c) for c in row.split(",")]
                for row in body.split(";")]
        return dy.OrbitPoint.from_rational(cfg.field, cfg.places, len(rows), rows)
    if spec.startswith("file:"):
        with open(spec[len("file:"):], "r", encoding="utf-8") as fh:
            data = json.load(fh)
        mats = [[[Fraction(c) for c in row] for row in mat]
                for mat in data["matrices"]]
        if len(mats) != len(cfg.places):
            raise SchemaError("/orbit_survey/point",
                              "matrix count does not match S")
        return dy.OrbitPoint(cfg.field, cfg.places, len(mats[0]), mats,
                             provenance=data.get("provenance", "rational"))
    raise SchemaError("/orbit_survey/point", f"cannot parse point {spec!r}")


def _parse_grid(text):
    """'s_min:s_max:steps[,k_min:k_max]' -> (s values, k values)."""
    svals = kvals = None
    parts = text.split(",")
    s = parts[0].split(":")
    if len(s) != 3:
        raise SchemaError("/orbit_survey/grid", "want s_min:s_max:steps")
    lo, hi, steps = float(s[0]), float(s[1]), int(s[2])
    svals = [lo + i * (hi - lo) / max(steps - 1, 1) for i in range(steps)]
    if len(parts) > 1:
        k = parts[1].split(":")
        if len(k) != 2:
            raise SchemaError("/orbit_survey/grid", "want k_min:k_max")
        kvals = list(range(int(k[0]), int(k[1]) + 1))
    return svals, kvals


# ---------------------------------------------------------------------------
# Subcommand implementations


def _cmd_field_info(cfg, outdir, fmt, args):
    places = []
    for p in cfg.places:
        entry = {"name": p.name, "kind": p.kind}
        if p.kind == "finite":
            entry.update(p=p.p, residue_degree=p.residue_degree,
                         precision=p.precision)
        else:
            entry["root"] = repr(p.root_float())
        places.append(entry)
    units = nf.s_unit_group(cfg.field, cfg.places, cfg.s_units_supplied)
    report = {
        "min_poly": list(cfg.field.min_poly),
        "degree": cfg.field.degree,
        "discriminant": cfg.field.discriminant,
        "places": places,
        "unit_rank": units.rank,
        "unit_generators": [[str(c) for c in u.coords] for u in units.generators],
        "torsion_generator": [str(c) for c in units.torsion_generator.coords],
        "balancing_constant": sd.balancing_constant(units),
    }
    _write(outdir, "field-info.json", emit_report(report))
    return 0


def _cmd_systole(cfg, outdir, fmt, args):
    block = cfg.block("systole")
    n = block.get("n", 2)
    rows = []
    if "diagonal_flow" in block:
        values = block["diagonal_flow"]["values"]
        lats = _diag_flow_lattices(cfg, values, n)
        for s, lat in zip(values, lats):
            rep = lt.systole(lat, cfg.window)
            rows.append((s, rep.min_content, rep.min_supnorm, rep.content_witness))
    elif "matrices" in block:
        mats = [_parse_matrix(m) for m in block["matrices"]]
        lat = lt.SLattice(cfg.field, cfg.places, n, mats)
        rep = lt.systole(lat, cfg.window)
        rows.append((0.0, rep.min_content, rep.min_supnorm, rep.content_witness))
    else:
        raise SchemaError("/systole", "need diagonal_flow or matrices")
    if fmt != "json":
        _write(outdir, "sweep.csv", emit_report(
            (("param", "min_content", "min_supnorm", "witness"), rows), "csv"))
    if fmt != "csv":
        _write(outdir, "systole.json", emit_report(
            {"rows": [{"param": r[0], "min_content": r[1],
                       "min_supnorm": r[2], "witness": r[3]} for r in rows]}))
    return 0


def _cmd_mahler(cfg, outdir, fmt, args):
    block = cfg.block("mahler")
    n = block.get("n", 2)
    if "diagonal_flow" in block:
        lats = _diag_flow_lattices(cfg, block["diagonal_flow"]["values"], n)
    elif "matrices_list" in block:
        lats = [lt.SLattice(cfg.field, cfg.places, n, [_parse_matrix(m) for m in mats])
                for mats in block["matrices_list"]]
    else:
        raise SchemaError("/mahler", "need diagonal_flow or matrices_list")
    report = lt.mahler_test(lats, block["radius"], cfg.window)
    out = {
        "radius": report.radius,
        "family_precompact_at_scale": report.family_precompact_at_scale,
        "first_failure": report.first_failure,
        "verdicts": [{
            "index": v.index, "passes": v.passes,
            "content_systole": v.content_systole,
            "supnorm_systole": v.supnorm_systole,
            "content_witness": v.content_witness,
            "supnorm_witness": v.supnorm_witness,
        } for v in report.verdicts],
    }
    _write(outdir, "mahler.json", emit_report(out))
    return 0


def _cmd_orbit_survey(cfg, outdir, fmt, args):
    block = dict(cfg.block("orbit_survey"))
    point_spec = getattr(args, "point", None) or block.get("point", "identity")
    point = _point_from_spec(cfg, point_spec)
    active_names = getattr(args, "active_places", None) or \
        block.get("active_places")
    active = [cfg.place_by_name(n) for n in active_names] if active_names \
        else list(cfg.places)
    heat_s = heat_k = None
    s_max = 10.0
    grid_text = getattr(args, "grid", None) or block.get("grid")
    if grid_text:
        heat_s, heat_k = _parse_grid(grid_text)
        s_max = max(abs(v) for v in heat_s) or 10.0
    H = getattr(args, "height", None)
    E = getattr(args, "denom", None)
    window = lt.HeightWindow(H or cfg.window.H,
                             cfg.window.E if E is None else E,
                             cfg.window.cap)
    steps = block.get("steps", 20)
    survey = dy.divergence_survey(point, active, window, steps=steps,
                                  s_max=s_max, heat_s=heat_s, heat_k=heat_k)
    heat_rows = [(r["s"], r["k"], r["min_content"], r["min_supnorm"],
                  r["witness"]) for r in survey.heat]
    if fmt != "json":
        _write(outdir, "heatmap.csv", emit_report(
            (("s", "k", "min_content", "min_supnorm", "witness"), heat_rows),
            "csv"))
    anomalies = list(survey.anomalies)
    expected = block.get("expect", {})
    got = survey.classifications()
    for ray_name, want in sorted(expected.items()):
        if got.get(ray_name) != want:
            anomalies.append(
                f"expected {ray_name} -> {want}, got {got.get(ray_name)}")
    verdict = {
        "point": point_spec,
        "active_places": [p.name for p in active],
        "prediction": survey.prediction,
        "classifications": got,
        "anomalies": anomalies,
        "consistent": not anomalies,
    }
    if fmt != "csv":
        _write(outdir, "orbit-survey.json", emit_report(verdict))
    return 2 if anomalies else 0


def _cmd_nilpotent_check(cfg, outdir, fmt, args):
    block = cfg.block("nilpotent_check")
    n = block.get("n", 2)
    if "matrices" in block:
        mats = [_parse_matrix(m) for m in block["matrices"]]
    else:
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        mats = [eye for _ in cfg.places]
    lat = lt.SLattice(cfg.field, cfg.places, n, mats)
    rep = lt.nilpotent_span_check(lat, block["radius"], cfg.window)
    out = {
        "radius": block["radius"],
        "is_nilpotent_span": rep.is_nilpotent_span,
        "kept": rep.kept,
        "witnesses": [{"coords": [[str(c) for c in co] for co in w.coords],
                       "sup_norm": w.sup_norm} for w in rep.witness_basis],
    }
    _write(outdir, "nilpotent-check.json", emit_report(out))
    return 0


def _cmd_expanding(cfg, outdir, fmt, args):
    block = cfg.block("expanding")
    place = cfg.place_by_name(block["place"])
    t = dy.expanding_element(block["positions"], Fraction(str(block["tau"])),
                             place)
    out = {
        "place": place.name,
        "tau": float(block["tau"]),
        "entries": [str(c) for c in t.entries[0]],
    }
    _write(outdir, "expanding.json", emit_report(out))
    return 0


def _cmd_form_spectrum(cfg, outdir, fmt, args):
    form = _build_form(cfg)
    block = cfg.block("spectrum")
    heights = sorted(block["heights"])
    E = block.get("denominator_exponent", 0)
    cap = block.get("cap")
    window = lt.HeightWindow(heights[-1], E)
    spec = fm.value_spectrum(form, window, magnitude_cap=cap,
                             dps=cfg.precision)
    rows = [(e.magnitude, e.count, e.witness) for e in spec.entries]
    if fmt != "json":
        _write(outdir, "spectrum.csv", emit_report(
            (("magnitude", "count", "witness"), rows), "csv"))
    out = {
        "heights": heights,
        "min_nonzero": spec.min_nonzero,
        "min_gap": spec.min_gap,
        "distinct": len(spec.entries),
        "zero_count": spec.zero_count,
    }
    if len(heights) >= 3:
        rep = fm.discreteness_report(form, heights, E=E, dps=cfg.precision)
        out["verdict"] = rep.verdict
        if rep.cluster:
            out["cluster_center"] = rep.cluster.center
            out["cluster_members"] = len(rep.cluster.members)
            out["per_window_counts"] = rep.cluster.per_window_counts
    if fmt != "csv":
        _write(outdir, "form-spectrum.json", emit_report(out))
    return 0


def _cmd_form_reconstruct(cfg, outdir, fmt, args):
    form = _build_form(cfg)
    rep = fm.rationality_reconstruct(form, precision=cfg.precision)
    out = {"status": rep.status, "evidence": rep.evidence}
    if rep.status == "reconstructed":
        out["g"] = list(rep.g)
        out["monomials"] = ["".join(f"x{i+1}^{e}" for i, e in enumerate(mono) if e)
                            for mono in form.basis]
        out["alpha"] = [float(fm._abs_numeric(a, p, cfg.precision)) *
                        (1 if _scalar_sign(a) >= 0 else -1)
                        for a, p in zip(rep.alpha, form.places)]
    _write(outdir, "form-reconstruct.json", emit_report(out))
    return 0


def _scalar_sign(a):
    if isinstance(a, QuadraticSurd):
        return a.sign()
    if isinstance(a, Fraction):
        return -1 if a < 0 else 1
    try:
        return -1 if float(a) < 0 else 1
    except (TypeError, ValueError):
        return 1


def _cmd_norm_form(cfg, outdir, fmt, args):
    block = cfg.block("form")
    if "norm_field" not in block:
        block = {"norm_field": {"min_poly": list(cfg.field.min_poly)}}
    target = nf.create_field(block["norm_field"]["min_poly"])
    basis = block["norm_field"].get("basis")
    elems = [target.element([Fraction(str(c)) for c in row]) for row in basis] \
        if basis else None
    form = fm.norm_form(target, elems)
    out = {
        "field_min_poly": list(target.min_poly),
        "degree": target.degree,
        "coefficients": [str(c) for c in form.expansions[0]],
        "monomials": ["*".join(f"x{i+1}^{e}" for i, e in enumerate(mono) if e)
                      for mono in form.basis],
    }
    _write(outdir, "norm-form.json", emit_report(out))
    return 0


def _cmd_littlewood(cfg, outdir, fmt, args):
    block = cfg.block("littlewood")
    res = fm.littlewood_scan(_littlewood_spec(block["alpha"]),
                             _littlewood_spec(block["beta"]), block["N"])
    if fmt != "json":
        _write(outdir, "records.csv", emit_report(
            (("n", "value"), [(n, v) for n, v in res.records]), "csv"))
    out = {"N": block["N"], "minimum": res.minimum, "argmin": res.argmin,
           "records": len(res.records)}
    if fmt != "csv":
        _write(outdir, "littlewood.json", emit_report(out))
    return 0


def _littlewood_spec(spec):
    if isinstance(spec, dict):
        return QuadraticSurd(Fraction(str(spec.get("a", 0))),
                             Fraction(str(spec.get("b", 0))),
                             int(spec.get("d", 1)))
    if isinstance(spec, (int, float)):
        return Fraction(spec)
    return Fraction(str(spec))


_COMMANDS = {
    "field-info": _cmd_field_info,
    "systole": _cmd_systole,
    "mahler": _cmd_mahler,
    "orbit-survey": _cmd_orbit_survey,
    "nilpotent-check": _cmd_nilpotent_check,
    "expanding": _cmd_expanding,
    "form-spectrum": _cmd_form_spectrum,
    "form-reconstruct": _cmd_form_reconstruct,
    "norm-form": _cmd_norm_form,
    "littlewood": _cmd_littlewood,
}


def run(subcommand, config, outdir=".", fmt="both", args=None):
    """Dispatch a validated config; returns the process exit code."""
    if subcommand not in _COMMANDS:
        raise ValueError(f"unknown subcommand {subcommand}")
    cfg = config if isinstance(config, RunConfig) else parse_config(config)
    return _COMMANDS[subcommand](cfg, outdir, fmt, args or argparse.Namespace())


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="sadiclab",
        description="S-adic lattice geometry, orbit surveys and decomposable forms")
    parser.add_argument("--config", required=True,
                        help="path to a JSON config, or inline JSON")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--format", default="both",
                        choices=["json", "csv", "both"])
    parser.add_argument("--precision", type=int, default=None,
                        help="override the config precision")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker hint; results are identical for any value")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property suites only")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        if name == "orbit-survey":
            sp.add_argument("--field", default=None,
                            help="override min_poly, ascending comma ints")
            sp.add_argument("--places", default=None,
                            help="override finite primes, comma ints")
            sp.add_argument("--point", default=None,
                            help="identity | rational:<rows> | file:<path>")
            sp.add_argument("--active-places", default=None, type=str,
                            help="comma-separated place names")
            sp.add_argument("--grid", default=None,
                            help="s_min:s_max:steps[,k_min:k_max]")
            sp.add_argument("--height", type=int, default=None)
            sp.add_argument("--denom", type=int, default=None)
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        raw_source = args.config
        if getattr(args, "field", None) or getattr(args, "places", None):
            base = parse_config(raw_source).raw
            override = dict(base)
            if getattr(args, "field", None):
                override["min_poly"] = [int(c) for c in args.field.split(",")]
            if getattr(args, "places", None):
                block = dict(override.get("places", {}))
                block["finite_primes"] = [int(p) for p in args.places.split(",")]
                override["places"] = block
            raw_source = override
        cfg = parse_config(raw_source)
        if args.precision:
            cfg = RunConfig(raw=cfg.raw, field=cfg.field, places=cfg.places,
                            precision=args.precision, window=cfg.window,
                            hensel_precision=cfg.hensel_precision,
                            s_units_supplied=cfg.s_units_supplied)
        if getattr(args, "active_places", None):
            args.active_places = args.active_places.split(",")
        return run(args.subcommand, cfg, args.out, args.format, args)
    except SadicLabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
