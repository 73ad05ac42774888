"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 verification failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import constructions as cons
from .errors import InvariantViolation, PentadError, SpecParseError, TruncationLimit
from .graded import (DEFAULT_CAP, DEFAULT_MAX_DEGREE, build_algebra, build_local_part,
                     invariant_form_failures, jacobi_failures, structure_report,
                     transitivity_ranks)
from .linalg import QMatrix, parse_rational, rank
from .modules import module_pairing, negative_extension, positive_extension
from .pentad import analyze, direct_sum, phi_pairing_identity_check, shuffle_columns
from .spec_io import dumps_spec, load_document, parse_weight, pentad_from_dict

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_VERIFY = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    input_path: str = None
    max_degree: int = DEFAULT_MAX_DEGREE
    cap: int = DEFAULT_CAP
    output: str = "text"
    seed: int = 0
    samples: object = "all"
    all_fixtures: bool = False


def _build(p, N, cap):
    """Hook used by every command that needs an algebra."""
    return build_algebra(p, N, cap)


# -- builders -----------------------------------------------------------

def _resolve(item, base):
    """A nested builder input: inline spec, inline builder, or a path."""
    if isinstance(item, str):
        path = Path(item)
        if not path.is_absolute() and base is not None:
            path = base / path
        return compose_pentad(load_document(path), path.parent)
    if isinstance(item, dict):
        return compose_pentad(item, base)
    raise SpecParseError(f"cannot interpret builder input {item!r}")


def _data(doc):
    if "X" in doc:
        return cons.cartan_data(QMatrix([[parse_rational(x) for x in r] for r in doc["X"]]),
                                doc.get("root_norms", ["2"] * len(doc["X"])))
    try:
        return cons.finite_cartan_data(str(doc["type"]), int(doc["rank"]))
    except KeyError as exc:
        raise SpecParseError(f"builder needs {exc}") from None


def _mat(v, name):
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise SpecParseError(f"{name} must be a matrix")
    return QMatrix([[parse_rational(x) for x in r] for r in v])


def _weights(doc, key="weights"):
    ws = doc.get(key, [])
    if not isinstance(ws, list):
        raise SpecParseError(f"{key} must be a list of weights")
    return [parse_weight(w, key) for w in ws]


def compose_pentad(doc, base=None):
    """Evaluate a builder document (or pass a plain pentad spec through)."""
    if not isinstance(doc, dict):
        raise SpecParseError("builder spec must be a mapping")
    b = doc.get("builder")
    if b is None:
        return pentad_from_dict(doc)
    if b == "from_semisimple":
        return cons.from_semisimple(_data(doc))
    if b == "from_contragredient":
        return cons.from_contragredient(_mat(doc.get("X"), "X"))
    if b == "from_reductive":
        k = int(doc.get("k", 1))
        A_Z = _mat(doc["A_Z"], "A_Z") if "A_Z" in doc else None
        return cons.from_reductive(k, _data(doc), A_Z)
    if b == "cs_family":
        m = cons.cs_family(_data(doc), doc.get("n", []), doc.get("s", "0"))
        if m.pentad is None:
            raise InvariantViolation(f"s = {doc.get('s')} makes the family singular")
        return m.pentad
    if b == "reductive_rep_embedding":
        return cons.reductive_rep_embedding(_data(doc), _mat(doc["N"], "N"), _mat(doc["A_Z"], "A_Z"))[0]
    if b == "direct_sum":
        items = doc.get("inputs", [])
        if len(items) < 1:
            raise SpecParseError("direct_sum needs inputs")
        p = _resolve(items[0], base)
        for it in items[1:]:
            p = direct_sum(p, _resolve(it, base))
        return p
    if b == "chain_append_weights":
        return cons.chain_append_weights(_resolve(doc["input"], base), _weights(doc))
    if b == "scalar_augmented_embedding":
        At = _mat(doc["A_tilde"], "A_tilde") if "A_tilde" in doc else None
        return cons.scalar_augmented_embedding(_resolve(doc["input"], base), _weights(doc), At)[0]
    if b == "shuffle_columns":
        g = doc.get("Gamma")
        g = parse_weight(g, "Gamma") if g is not None else None
        return shuffle_columns(_resolve(doc["input"], base), doc.get("perm", []), g)
    raise SpecParseError(f"unknown builder {b!r}")


# -- commands -----------------------------------------------------------

def _emit(cfg, payload, text):
    if cfg.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _dims_table(dims):
    ks = sorted(dims)
    w = max(len(str(k)) for k in ks) + 1
    return ("degree " + " ".join(str(k).rjust(w) for k in ks) + "\n"
            + "dim    " + " ".join(str(dims[k]).rjust(w) for k in ks))


def _load(cfg):
    if not cfg.input_path:
        raise SpecParseError("--input is required")
    path = Path(cfg.input_path)
    doc = load_document(path)
    return compose_pentad(doc, path.parent), doc


def cmd_analyze(cfg):
    p, _ = _load(cfg)
    rep = analyze(p)
    js = rep.to_json()
    text = "\n".join(f"{k}: {v}" for k, v in js.items())
    _emit(cfg, js, text)
    return rep


def cmd_expand(cfg):
    p, _ = _load(cfg)
    alg = _build(p, cfg.max_degree, cfg.cap)
    rep = structure_report(alg)
    js = rep.to_json()
    total = rep.total_dim if rep.finite else f"infinite or beyond truncation (>= {rep.lower_bound})"
    text = (_dims_table(rep.dims_by_degree) + f"\nfinite: {rep.finite}\ntotal_dim: {total}"
            f"\ncenter_dim_0: {rep.center_dim_degree0}")
    _emit(cfg, js, text)
    return rep


def _module_spec(doc):
    m = doc.get("module")
    if not isinstance(m, dict) or "weight" not in m:
        raise SpecParseError("spec has no module section with a weight")
    direction = m.get("direction", "positive")
    if direction not in ("positive", "negative"):
        raise SpecParseError("module direction must be positive or negative")
    w = m["weight"]
    weights = [parse_weight(x) for x in w] if w and isinstance(w[0], list) else [parse_weight(w)]
    return weights, direction


def cmd_module(cfg):
    p, doc = _load(cfg)
    weights, direction = _module_spec(doc)
    alg = build_local_part(p)
    ext = positive_extension if direction == "positive" else negative_extension
    U = ext(alg, weights, cfg.max_degree, cfg.cap)
    js = {
        "direction": direction,
        "dims": {str(k): v for k, v in U.dims_by_degree().items()},
        "finite": U.finite,
        "total_dim": U.total_dim if U.finite else None,
        "weights": {str(d): [[str(x) for x in U.weight(d, b)] for b in range(U.dim(d))]
                    for d in U.degrees()},
        "truncated": not U.finite,
    }
    text = _dims_table(U.dims_by_degree()) + f"\nfinite: {U.finite}\ntotal_dim: {js['total_dim']}"
    _emit(cfg, js, text)
    return U


def cmd_compose(cfg):
    p, doc = _load(cfg)
    name = doc.get("name")
    text = dumps_spec(p, name=name)
    print(text, end="")
    return p


# -- verification -------------------------------------------------------

def verify_pentad(p, doc, N, cap, samples="all", seed=0):
    """Run every check on one pentad; returns a list of (name, status, detail)."""
    results = []

    def record(name, ok, detail=""):
        results.append((name, "pass" if ok else "FAIL", detail))

    expect = doc.get("expect", {}) if isinstance(doc, dict) else {}
    rep = analyze(p)
    record("phi_pairing_identities", phi_pairing_identity_check(p))
    if "cartan" in expect:
        record("cartan_matrix", rep.cartan.C.to_strings() == expect["cartan"])
    for key in ("regular", "transitive", "ann_dim"):
        if key in expect:
            got = getattr(rep, key)
            record(key, got == expect[key], "" if got == expect[key] else f"got {got}")
    alg = _build(p, N, cap)
    jf = jacobi_failures(alg, samples, seed)
    record("jacobi", not jf, f"{len(jf)} failures" if jf else "")
    tr = transitivity_ranks(alg)
    record("transitivity", all(d == rk for k, (d, rk) in tr.items() if abs(k) >= 2))
    if p.symmetric:
        ff = invariant_form_failures(alg)
        record("invariant_form", not ff, f"{len(ff)} failures" if ff else "")
    else:
        results.append(("invariant_form", "skipped", "A not symmetric"))
    srep = structure_report(alg)
    if srep.decomposition is not None:
        record("structure_theorem", srep.decomposition["dims_match"]
               and srep.center_dim_degree0 == p.r - p.n)
    if N == expect.get("max_degree"):
        for key, got in (("dims", {str(k): v for k, v in srep.dims_by_degree.items()}),
                         ("finite", srep.finite), ("total_dim", srep.total_dim),
                         ("center_dim_0", srep.center_dim_degree0)):
            if key in expect:
                record(key, got == expect[key], "" if got == expect[key] else f"got {got}")
    if isinstance(doc, dict) and "module" in doc:
        weights, direction = _module_spec(doc)
        loc = build_local_part(p)
        U = positive_extension(loc, weights, N, cap)
        W = negative_extension(loc, [tuple(-x for x in w) for w in weights], N, cap)
        record("module_pairing", module_pairing(U, W).full_rank)
        if direction == "negative":
            U = W
        if "module_dims" in expect and N == expect.get("max_degree"):
            got = {str(k): v for k, v in U.dims_by_degree().items()}
            record("module_dims", got == expect["module_dims"], "" if got == expect["module_dims"] else f"got {got}")
    return results


def fixture_paths():
    root = resources.files("cartan_pentads") / "fixtures"
    return sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)


def cmd_verify(cfg):
    jobs = []
    if cfg.all_fixtures:
        for path in fixture_paths():
            doc = json.loads(path.read_text())
            jobs.append((doc.get("name", path.name), compose_pentad(doc), doc))
    else:
        p, doc = _load(cfg)
        jobs.append((doc.get("name", cfg.input_path), p, doc))
    summary = {}
    ok = True
    lines = []
    for name, p, doc in jobs:
        N = doc.get("expect", {}).get("max_degree", cfg.max_degree) if cfg.all_fixtures else cfg.max_degree
        res = verify_pentad(p, doc, N, cfg.cap, cfg.samples, cfg.seed)
        summary[name] = [{"check": c, "status": s, "detail": d} for c, s, d in res]
        for c, s, d in res:
            lines.append(f"{name}: {c}: {s}" + (f" ({d})" if d else ""))
            ok = ok and s != "FAIL"
    _emit(cfg, {"ok": ok, "results": summary}, "\n".join(lines) + f"\n{'ALL PASS' if ok else 'FAILURES'}")
    return ok


COMMANDS = {"analyze": cmd_analyze, "expand": cmd_expand, "module": cmd_module,
            "compose": cmd_compose, "verify": cmd_verify}


def make_parser():
    ap = argparse.ArgumentParser(prog="cartan-pentads",
                                 description="Exact computations with Cartan-type pentads.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", dest="input_path")
    ap.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    ap.add_argument("--cap", type=int, default=DEFAULT_CAP)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", default="all",
                    help='number of Jacobi triples to sample, or "all"')
    ap.add_argument("--all-fixtures", action="store_true")
    return ap


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    samples = args.samples
    if samples != "all":
        try:
            samples = int(samples)
        except ValueError:
            ap.error("--samples must be an integer or 'all'")
    if args.max_degree < 1:
        ap.error("--max-degree must be at least 1")
    cfg = RunConfig(args.command, args.input_path, args.max_degree, args.cap,
                    "json" if args.json else "text", args.seed, samples, args.all_fixtures)
    try:
        result = COMMANDS[cfg.command](cfg)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvariantViolation, TruncationLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except PentadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if cfg.command == "verify" and not result:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
