"""Reading family files, writing reports and sign-pattern rasters."""

import csv
import json

import numpy as np

from .errors import ParseError
from .polyring import DEFAULT_TAU, Polynomial, sign_many
from .varieties import Family, Variety


def _vec(value, where, n=None):
    try:
        arr = np.asarray(value, dtype=float).reshape(-1)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: expected a list of numbers") from None
    if n is not None and arr.shape[0] != n:
        raise ParseError(f"{where}: expected {n} coordinates, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{where}: non-finite coordinate")
    return arr


def _field(rec, key, where):
    if not isinstance(rec, dict) or key not in rec:
        raise ParseError(f"{where}: missing {key!r}")
    return rec[key]


def _range(rec, where):
    tr = rec.get("t_range", [-1.0, 1.0])
    tr = _vec(tr, f"{where}.t_range", 2)
    return float(tr[0]), float(tr[1])


def _samples(rec, where, default=64):
    samples = rec.get("samples", default)
    if not isinstance(samples, int) or samples < 1:
        raise ParseError(f"{where}.samples: expected a positive integer")
    return samples


def _parse_family(rec, idx, n, tau):
    where = f"families[{idx}]"
    name = rec.get("name", f"family{idx}") if isinstance(rec, dict) else None
    kind = _field(rec, "kind", where)
    key = {"points": "points", "lines": "lines", "circles": "circles",
           "graphs": "graphs", "implicit": "varieties"}.get(kind)
    if key is None:
        raise ParseError(f"{where}.kind: unknown kind {kind!r}")
    items = _field(rec, key, where)
    if not isinstance(items, list) or not items:
        raise ParseError(f"{where}.{key}: expected a non-empty list")
    out = []
    for k, item in enumerate(items):
        w = f"{where}.{key}[{k}]"
        try:
            if kind == "points":
                out.append(Variety.from_point(_vec(item, w, n)))
            elif kind == "lines":
                out.append(Variety.line(_vec(_field(item, "point", w), f"{w}.point", n),
                                        _vec(_field(item, "direction", w), f"{w}.direction", n),
                                        _range(item, w), _samples(item, w)))
            elif kind == "circles":
                basis = item.get("basis")
                if basis is not None:
                    if not isinstance(basis, list) or len(basis) != 2:
                        raise ParseError(f"{w}.basis: expected two vectors")
                    basis = [_vec(b, f"{w}.basis[{i}]", n) for i, b in enumerate(basis)]
                out.append(Variety.circle(_vec(_field(item, "center", w), f"{w}.center", n),
                                          float(_field(item, "radius", w)), basis, _samples(item, w)))
            elif kind == "graphs":
                coefs = _field(item, "coefficients", w)
                if not isinstance(coefs, list) or len(coefs) != n - 1:
                    raise ParseError(f"{w}.coefficients: expected {n - 1} coefficient lists")
                out.append(Variety.graph([_vec(c, f"{w}.coefficients[{i}]") for i, c in enumerate(coefs)],
                                         _range(item, w), _samples(item, w)))
            else:
                eqs = _field(item, "equations", w)
                if not isinstance(eqs, list) or not eqs:
                    raise ParseError(f"{w}.equations: expected a non-empty list")
                polys = [Polynomial.from_records(n, e, f"{w}.equations[{i}]") for i, e in enumerate(eqs)]
                seeds = [_vec(s, f"{w}.seeds[{i}]", n) for i, s in enumerate(_field(item, "seeds", w))]
                if not seeds:
                    raise ParseError(f"{w}.seeds: need at least one seed point")
                k_dim = _field(item, "k", w)
                if "m" in item and len(polys) > item["m"]:
                    raise ParseError(f"{w}: {len(polys)} equations but m = {item['m']}")
                if "d" in item and max(p.degree for p in polys) > item["d"]:
                    raise ParseError(f"{w}: an equation exceeds degree d = {item['d']}")
                out.append(Variety.implicit(polys, np.array(seeds), int(k_dim), tau=tau))
        except ParseError:
            raise
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{w}: {exc}") from None
    try:
        return Family(str(name), out)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_families(doc, tau=DEFAULT_TAU):
    """Build ``(n, families)`` from a decoded input document."""
    n = _field(doc, "n", "input")
    if not isinstance(n, int) or n < 1:
        raise ParseError("input.n: expected a positive integer")
    fams = _field(doc, "families", "input")
    if not isinstance(fams, list) or not fams:
        raise ParseError("input.families: expected a non-empty list")
    families = [_parse_family(rec, i, n, tau) for i, rec in enumerate(fams)]
    for i, fam in enumerate(families):
        if fam.n != n:
            raise ParseError(f"families[{i}]: dimension {fam.n} differs from n = {n}")
    return n, families


def load_families(path, tau=DEFAULT_TAU):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return parse_families(doc, tau)


def dumps_report(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report, path):
    with open(path, "w") as fh:
        fh.write(dumps_report(report))


def polys_from_report(report, n):
    try:
        records = report["partition"]["polynomials"]
    except (KeyError, TypeError):
        raise ParseError("report: missing partition.polynomials") from None
    return [Polynomial.from_records(n, r, f"polynomials[{i}]") for i, r in enumerate(records)]


def raster_ids(polys, bbox, resolution, tau=DEFAULT_TAU):
    """Grid of sign-pattern ids over ``bbox = (xmin, xmax, ymin, ymax)``.

    Row ``r`` holds ``y = ys[r]``, column ``c`` holds ``x = xs[c]``; grid
    points inside the band of some polynomial get id -1.
    """
    xmin, xmax, ymin, ymax = bbox
    xs = np.linspace(xmin, xmax, resolution)
    ys = np.linspace(ymin, ymax, resolution)
    gx, gy = np.meshgrid(xs, ys)
    P = np.column_stack([gx.ravel(), gy.ravel()])
    ids = np.zeros(P.shape[0], dtype=np.int64)
    zero = np.zeros(P.shape[0], dtype=bool)
    for p in polys:
        sg = sign_many(p, P, tau)
        ids = 2 * ids + (sg < 0)
        zero |= sg == 0
    ids[zero] = -1
    return xs, ys, ids.reshape(resolution, resolution)


def write_raster(prefix, polys, bbox, resolution, tau=DEFAULT_TAU):
    if polys and polys[0].n != 2:
        raise ValueError("rasters are only available for n = 2")
    xs, ys, ids = raster_ids(polys, bbox, resolution, tau)
    with open(prefix + ".csv", "w", newline="") as fh:
        csv.writer(fh).writerows(ids.tolist())
    meta = {"bbox": list(map(float, bbox)), "resolution": resolution, "s": len(polys), "tau": tau,
            "rows": "y ascending", "columns": "x ascending",
            "encoding": "first sign bit most significant; bit 1 = negative; -1 = tolerance band"}
    with open(prefix + ".json", "w") as fh:
        fh.write(dumps_report(meta))
    return ids


__all__ = ["dumps_report", "load_families", "parse_families", "polys_from_report",
           "raster_ids", "write_raster", "write_report"]
