"""Command line entry points: ``census``, ``knot`` and ``embed``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import certify
from .diagram import DiagramError, checkerboard, extract_faces, parse_pd
from .goeritz import NEGATIVE, POSITIVE, Degenerate, format_matrix, goeritz, parse_matrix, pregoeritz
from .lattice import DEFAULT_NODE_CAP, EMBEDDABLE, RESOURCE_EXHAUSTED, EmbeddingProblem, embed
from .obstruct import (
    InvariantRecord,
    NonCyclic,
    congruence_class,
    donaldson_obstruction,
    linking_form,
    moebius_obstruction,
)

CLASS_LABEL = {0: "0", 2: "+2", 4: "4", 6: "-2"}


class ConfigError(ValueError):
    pass


def bundled(name: str) -> Path:
    return Path(str(resources.files("gamma4") / "data" / name))


@dataclass(frozen=True)
class KnotRow:
    record: InvariantRecord
    pd_code: str


@dataclass(frozen=True)
class CensusConfig:
    knots_file: Path
    certificates_file: Path | None
    known_file: Path | None = None
    expected_file: Path | None = None
    output: Path | None = None
    parallelism: int = 1
    node_cap: int = DEFAULT_NODE_CAP

    def __post_init__(self):
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        for p in (self.knots_file, self.certificates_file, self.known_file, self.expected_file):
            if p is not None and not Path(p).is_file():
                raise ConfigError(f"{p}: no such file")


# -- file formats ------------------------------------------------------------

KNOT_COLUMNS = ("name", "pd_code", "signature", "arf", "determinant", "slice", "alternating")


def _flag(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "true", "yes", "y"):
        return True
    if v in ("0", "false", "no", "n", ""):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def load_knot_table(path) -> list[KnotRow]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(KNOT_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ConfigError(f"{path}: missing columns {sorted(missing)}")
        rows = []
        for r in reader:
            line = reader.line_num
            try:
                rec = InvariantRecord(
                    r["name"].strip(), int(r["signature"]), int(r["arf"]), int(r["determinant"]),
                    _flag(r["slice"]), _flag(r["alternating"]))
            except ValueError as exc:
                raise ConfigError(f"{path}: line {line}: {exc}") from None
            rows.append(KnotRow(rec, r["pd_code"]))
    return rows


def load_known(path) -> list[certify.Certificate]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if set(reader.fieldnames or ()) < {"name", "gamma4"}:
            raise ConfigError(f"{path}: expected columns name,gamma4")
        for r in reader:
            try:
                out.append(certify.Certificate.known(r["name"], int(r["gamma4"]), Path(path).name))
            except ValueError as exc:
                raise ConfigError(f"{path}: line {reader.line_num}: {exc}") from None
    return out


def load_expected(path) -> dict[str, int]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected an object of name -> value")
    return {str(k): int(v) for k, v in data.items()}


def load_group_listing() -> dict[int, list[str]]:
    data = json.loads(bundled("groups.json").read_text(encoding="utf-8"))
    return {int(k): v for k, v in data.items()}


# -- per-knot analysis -------------------------------------------------------


def goeritz_forms(row: KnotRow, mirror: bool = False):
    """Goeritz forms of both colorings (``None`` where degenerate)."""
    d = parse_pd(row.pd_code, row.record.name)
    if mirror:
        d = d.mirror()
    faces = extract_faces(d)
    out = []
    for c in checkerboard(d, faces):
        try:
            out.append(goeritz(pregoeritz(c), name=d.name))
        except Degenerate:
            out.append(None)
    return d, out


def _pick(forms, sign):
    return next((f for f in forms if f is not None and f.definiteness == sign), None)


def _form_json(f):
    if f is None:
        return None
    return {"coloring": f.source[1], "definiteness": f.definiteness, "det": f.det,
            "gram": f.gram.tolist()}


def _sweep_json(s):
    return {
        "form": s.form.source[0],
        "attempts": [{"ell": ell, "status": r.status, "nodes": r.nodes_searched,
                      "witness": None if r.witness is None else r.witness.tolist()}
                     for ell, r in s.attempts],
    }


def analyze(row: KnotRow, node_cap: int = DEFAULT_NODE_CAP) -> tuple[dict, float]:
    """All lower-bound evidence for one knot, as a JSON-ready dict."""
    t0 = time.perf_counter()
    rec = row.record
    cls = congruence_class(rec.signature, rec.arf)
    info: dict = {"class": CLASS_LABEL[cls], "determinant": rec.determinant,
                  "alternating": rec.alternating, "notes": [], "bounds": []}
    try:
        _, forms = goeritz_forms(row)
    except DiagramError as exc:
        info["notes"].append(f"diagram rejected: {exc}")
        return info, time.perf_counter() - t0
    info["forms"] = [_form_json(f) for f in forms]
    for f in forms:
        if f is not None and abs(f.det) != rec.determinant:
            info["notes"].append(f"Goeritz determinant {abs(f.det)} differs from table {rec.determinant}")

    if cls == 4:
        info["bounds"].append([2, "congruence: sigma + 4 Arf = 4 mod 8"])
    else:
        if cls == 6:
            mname = "-" + rec.name
            _, mforms = goeritz_forms(row, mirror=True)
            use, target = [_pick(mforms, NEGATIVE)], rec.mirror()
        elif cls == 2:
            use, target = [_pick(forms, NEGATIVE)], rec
        else:
            use, target = [_pick(forms, POSITIVE), _pick(forms, NEGATIVE)], rec
        if any(f is None for f in use):
            info["donaldson"] = {"skipped": "no definite Goeritz form of the required sign"}
        else:
            out = donaldson_obstruction(target, use, node_cap)
            info["donaldson"] = {
                "knot": mname if cls == 6 else rec.name,
                "sweeps": [_sweep_json(s) for s in out.sweeps],
                "obstructed": out.bound is not None,
            }
            if any(r.status == RESOURCE_EXHAUSTED for s in out.sweeps for _, r in s.attempts):
                info["notes"].append("embedding search hit the node cap")
            if out.bound:
                info["bounds"].append([2, "lattice embedding obstruction"])

    base = next((f for f in forms if f is not None), None)
    if base is None:
        info["linking"] = {"skipped": "no nondegenerate Goeritz form"}
    else:
        try:
            lf = linking_form(base)
            m = moebius_obstruction(lf)
            info["linking"] = {"n": lf.n, "q": lf.q, "applicable": m.applicable,
                               "obstructed": m.bound is not None}
            if m.bound:
                info["bounds"].append([2, f"linking form {lf} admits no generator of square +-1/{lf.n}"])
        except NonCyclic as exc:
            info["linking"] = {"skipped": str(exc)}
    return info, time.perf_counter() - t0


def _analyze_star(args):
    return analyze(*args)


# -- census ------------------------------------------------------------------


def build_certificates(cfg: CensusConfig) -> list[certify.Certificate]:
    certs = []
    if cfg.certificates_file is not None:
        certs += certify.load_certificates(cfg.certificates_file)
    if cfg.known_file is not None:
        certs += load_known(cfg.known_file)
    return certs


def run_census(cfg: CensusConfig) -> tuple[dict, int]:
    """Run the pipeline; returns the report and the exit status."""
    t0 = time.perf_counter()
    rows = load_knot_table(cfg.knots_file)
    certs = build_certificates(cfg)
    graph = certify.ingest(certs, [r.record for r in rows])

    jobs = [(r, cfg.node_cap) for r in rows]
    if cfg.parallelism > 1:
        with ProcessPoolExecutor(cfg.parallelism) as pool:
            results = list(pool.map(_analyze_star, jobs, chunksize=4))
    else:
        results = [analyze(*j) for j in jobs]
    analyses = {r.record.name: a for r, (a, _) in zip(rows, results)}
    timing = {r.record.name: round(dt, 4) for r, (_, dt) in zip(rows, results)}

    obstructions = {name: [tuple(b) for b in a["bounds"]] for name, a in analyses.items()}
    state = certify.propagate(graph, obstructions)
    expected = load_expected(cfg.expected_file) if cfg.expected_file else None
    rep = certify.resolve_census(state, expected)

    listing_flags = []
    for cls, names in sorted(load_group_listing().items()):
        listed = set(names)
        for r in rows:
            c = congruence_class(r.record.signature, r.record.arf)
            if (c == cls) != (r.record.name in listed):
                listing_flags.append({"knot": r.record.name, "class": CLASS_LABEL[c],
                                      "listed_in": CLASS_LABEL[cls] if r.record.name in listed else None})
        dups = sorted({n for n in names if names.count(n) > 1})
        for n in dups:
            listing_flags.append({"knot": n, "duplicate_in_listing": CLASS_LABEL[cls]})

    classes: dict[str, int] = {}
    for r in rows:
        lab = CLASS_LABEL[congruence_class(r.record.signature, r.record.arf)]
        classes[lab] = classes.get(lab, 0) + 1

    knots = {}
    for r in rows:
        name = r.record.name
        lo, hi = state.interval(name)
        entry = {"gamma4": rep.values.get(name), "interval": [lo, hi],
                 "derivation": state.derivation(name), "obstructions": analyses[name]}
        knots[name] = entry
    result = {
        "counts": {str(k): v for k, v in rep.counts.items()},
        "congruence_classes": dict(sorted(classes.items())),
        "unresolved": {k: list(v) for k, v in rep.unresolved.items()},
        "mismatches": {k: {"got": g, "expected": w} for k, (g, w) in rep.mismatches.items()},
        "listing_flags": listing_flags,
        "knots": knots,
    }
    report = {"result": result,
              "timing": {"total_seconds": round(time.perf_counter() - t0, 3), "per_knot": timing}}
    return report, (0 if rep.ok else 1)


# -- commands ----------------------------------------------------------------


def cmd_census(args) -> int:
    cfg = CensusConfig(Path(args.knots), Path(args.certs) if args.certs else None,
                       Path(args.known) if args.known else None,
                       Path(args.expect) if args.expect else None,
                       Path(args.out), args.jobs, args.node_cap)
    try:
        report, status = run_census(cfg)
    except certify.Inconsistent as exc:
        print(f"inconsistent bounds: {exc}", file=sys.stderr)
        return 3
    Path(args.out).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    res = report["result"]
    counts = ", ".join(f"gamma4={k}: {v}" for k, v in res["counts"].items())
    print(f"{counts}; unresolved: {len(res['unresolved'])}; mismatches: {len(res['mismatches'])}")
    for k, iv in res["unresolved"].items():
        print(f"  unresolved {k}: {iv}")
    for k, mm in res["mismatches"].items():
        print(f"  mismatch {k}: got {mm['got']}, expected {mm['expected']}")
    print(f"report written to {args.out} ({report['timing']['total_seconds']} s)")
    return status


def cmd_knot(args) -> int:
    rows = {r.record.name: r for r in load_knot_table(args.knots)}
    name = certify.normalize_name(args.name)
    if name not in rows:
        raise certify.UnknownKnot(f"{args.name} is not in {args.knots}")
    row = rows[name]
    rec = row.record
    cfg = CensusConfig(Path(args.knots), Path(args.certs), Path(args.known), None, None, 1, args.node_cap)
    graph = certify.ingest(build_certificates(cfg), [r.record for r in rows.values()])

    cls = congruence_class(rec.signature, rec.arf)
    print(f"{rec.name}: signature {rec.signature}, Arf {rec.arf}, det {rec.determinant}, "
          f"{'alternating' if rec.alternating else 'non-alternating'}")
    print(f"congruence class sigma + 4 Arf = {CLASS_LABEL[cls]} mod 8")
    diagrams = [("", goeritz_forms(row))]
    if cls == 6:
        diagrams.append(("-", goeritz_forms(row, mirror=True)))
    for prefix, (d, forms) in diagrams:
        for k, f in enumerate(forms):
            if f is None:
                print(f"\n{prefix}{rec.name} coloring {k}: degenerate")
                continue
            print(f"\n{prefix}{rec.name} coloring {k}: {f.definiteness}, det {f.det}, "
                  f"{f.rank}x{f.rank} (deleted region {f.deleted_index})")
            print(format_matrix(f.gram))

    info, _ = analyze(row, args.node_cap)
    print()
    if "donaldson" in info:
        dn = info["donaldson"]
        if "skipped" in dn:
            print(f"embedding test skipped: {dn['skipped']}")
        for s in dn.get("sweeps", []):
            for a in s["attempts"]:
                print(f"embed {s['form']} + [-{a['ell']}]: {a['status']} after {a['nodes']} nodes")
                if a["witness"] is not None:
                    print(format_matrix(np.array(a["witness"])))
    lk = info.get("linking", {})
    if "n" in lk:
        print(f"linking form {lk['q']}/{lk['n']}: "
              + ("obstructs" if lk["obstructed"] else "no obstruction")
              + ("" if lk["applicable"] else " (order has an even prime exponent)"))
    else:
        print(f"linking form: {lk.get('skipped')}")

    obstructions = {rec.name: [tuple(b) for b in info["bounds"]]}
    state = certify.propagate(graph, obstructions)
    print("\nderivation:")
    for line in state.derivation(rec.name):
        print("  " + line)
    lo, hi = state.interval(rec.name)
    print(f"\ngamma4({rec.name}) = {lo}" if lo == hi else f"\ngamma4({rec.name}) in [{lo}, {hi}]")
    return 0


def cmd_embed(args) -> int:
    gram = parse_matrix(Path(args.gram).read_text(encoding="utf-8"))
    p = EmbeddingProblem.build(gram, args.target_rank)
    res = embed(p, args.node_cap)
    if res.status == EMBEDDABLE:
        print(f"embeddable ({res.nodes_searched} nodes)")
        print(format_matrix(res.witness))
    elif res.status == RESOURCE_EXHAUSTED:
        print(f"exhausted after {res.nodes_searched} nodes")
        return 2
    else:
        print(f"not embeddable ({res.nodes_searched} nodes)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gamma4", description="Non-orientable 4-genus census tools")
    sub = ap.add_subparsers(dest="command", required=True)

    def data_opts(p):
        p.add_argument("--knots", default=str(bundled("knots10.csv")))
        p.add_argument("--known", default=str(bundled("known.csv")))
        p.add_argument("--certs", default=str(bundled("certs.json")))
        p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)

    c = sub.add_parser("census", help="resolve every knot in a table")
    data_opts(c)
    c.add_argument("--expect", default=None, help="JSON object of expected values")
    c.add_argument("--out", required=True)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_census)

    k = sub.add_parser("knot", help="show the derivation for one knot")
    k.add_argument("name")
    data_opts(k)
    k.set_defaults(func=cmd_knot)

    e = sub.add_parser("embed", help="decide a lattice embedding into -Id")
    e.add_argument("--gram", required=True)
    e.add_argument("--target-rank", type=int, required=True)
    e.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    e.set_defaults(func=cmd_embed)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, certify.CertificateError, DiagramError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
