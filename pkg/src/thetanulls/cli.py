"""Command-line front end.

Every subcommand prints one JSON report (sorted keys, so a fixed config
yields byte-identical output) to stdout or --output.  Exit codes: 0 pass,
1 verification failure, 2 malformed input, 3 domain violation or resource
cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .bielliptic import verify_witnesses
from .errors import DomainError, MalformedInputError, ResourceCapError
from .f2core import F2Vector
from .hyperelliptic import (char_to_partition, formula_agreement,
                            std_labeling, theta_parity,
                            theta_support_classes, trans_config,
                            vanishing_thetanulls)
from .orbits import (Quadruple, census_report, classify, classify_by_delta,
                     delta_parities, differences)
from .f2core import span_dim, symplectic_pairing
from .quadforms import even_characteristics, odd_characteristics
from .thetanum import (IntSymplectic, SiegelMatrix, block_diag_split_check,
                       theta_constant, transform_modulus_check)
from .transversal import NodeSet, transversality_report
from .verify import CRITERIA


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON in {path}: {exc}") from exc


def _parse_points(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise MalformedInputError(f"bad point list {text!r}") from exc


def _genus_cap(g: int, lo: int, hi: int) -> None:
    if not lo <= g <= hi:
        raise DomainError(f"genus must be in [{lo}, {hi}]; got {g}")


def cmd_enumerate(args) -> dict:
    g = args.genus
    _genus_cap(g, 1, 8)
    report: dict = {}
    if args.parity in (None, "even"):
        report["even"] = sum(1 for _ in even_characteristics(g))
    if args.parity in (None, "odd"):
        report["odd"] = sum(1 for _ in odd_characteristics(g))
    if 2 <= g <= 6:
        classes = list(theta_support_classes(g))
        report["classes"] = len(classes)
        report["even_classes"] = sum(
            1 for t in classes if theta_parity(t) == 0)
        report["odd_classes"] = sum(1 for t in classes if theta_parity(t) == 1)
        report["vanishing"] = len(vanishing_thetanulls(std_labeling(g)))
        report["formula_agreement"] = formula_agreement(g)
    return report


def cmd_classify(args) -> dict:
    data = _load_json(args.input)
    q = Quadruple.from_json_dict(data)
    if args.genus is not None and args.genus != q.g:
        raise MalformedInputError(
            f"--genus {args.genus} does not match input g={q.g}")
    label = classify(q, verify_bases=True)
    diffs = differences(q, 4)
    d = span_dim(diffs)
    n = sum(symplectic_pairing(a, b)
            for i, a in enumerate(diffs) for b in diffs[i + 1:])
    return {
        "g": q.g,
        "label": label.value,
        "span_dim": d,
        "noncommuting_pairs": n,
        "delta_parities": list(delta_parities(q)),
        "delta_label": classify_by_delta(q).value,
        "base_independent": True,
    }


def cmd_orbit_census(args) -> dict:
    g = args.genus
    if g not in (2, 3):
        raise DomainError("orbit census supported for genus 2 and 3 only")
    return census_report(g)


def cmd_hyperelliptic(args) -> dict:
    g = args.genus
    _genus_cap(g, 2, 6)
    label = std_labeling(g)
    if args.action == "counts":
        classes = list(theta_support_classes(g))
        return {
            "classes": len(classes),
            "even": sum(1 for t in classes if theta_parity(t) == 0),
            "odd": sum(1 for t in classes if theta_parity(t) == 1),
            "formula_agreement": formula_agreement(g),
        }
    if args.action == "vanishing":
        vanishing = vanishing_thetanulls(label)
        return {
            "count": len(vanishing),
            "classes": sorted(sorted(char_to_partition(k, label).labels)
                              for k in vanishing),
        }
    # cut: the thetanull configuration through a point set S
    if args.points is None:
        raise MalformedInputError("cut requires --points")
    s = _parse_points(args.points)
    chars = trans_config(label, s)
    rows = []
    for k in chars:
        t = char_to_partition(k, label)
        rows.append({"labels": sorted(t.labels), "char": k.to_list()})
    return {"S": sorted(s), "count": len(rows), "characteristics": rows}


def cmd_bielliptic(args) -> dict:
    rows = verify_witnesses()
    return {"witnesses": rows, "all_ok": all(r["ok"] for r in rows)}


def _char_from_bits(bits, g: int) -> F2Vector:
    if (not isinstance(bits, list) or len(bits) != 2 * g
            or any(b not in (0, 1) for b in bits)):
        raise MalformedInputError("characteristic must be a 0/1 list "
                                  f"of length {2 * g}")
    return F2Vector.from_list(bits)


def cmd_theta(args) -> dict:
    data = _load_json(args.input)
    if not isinstance(data, dict):
        raise MalformedInputError("theta input must be a JSON object")
    if args.action == "eval":
        z = SiegelMatrix.from_json_dict(data.get("z", {}))
        k = _char_from_bits(data.get("k"), z.g)
        val, bound = theta_constant(z, k, args.eps)
        return {"g": z.g, "value": [val.real, val.imag], "bound": bound}
    if args.action == "transform":
        m = IntSymplectic.from_json_dict(data.get("m", {}))
        z = SiegelMatrix.from_json_dict(data.get("z", {}))
        k = _char_from_bits(data.get("k"), z.g)
        return transform_modulus_check(m, z, k, args.eps)
    blocks = data.get("blocks")
    if not isinstance(blocks, list) or not blocks:
        raise MalformedInputError('split input needs a nonempty "blocks"')
    zs, ks = [], []
    for blk in blocks:
        z = SiegelMatrix.from_json_dict(blk.get("z", {}))
        zs.append(z)
        ks.append(_char_from_bits(blk.get("k"), z.g))
    return block_diag_split_check(zs, ks, args.eps)


def cmd_transversal(args) -> dict:
    data = _load_json(args.nodes)
    ns = NodeSet.from_json_dict(data)
    if args.genus != ns.g:
        raise MalformedInputError(
            f"--genus {args.genus} does not match node file g={ns.g}")
    return transversality_report(ns, _parse_points(args.points))


def cmd_verify_all(args) -> dict:
    reports = []
    for fn in CRITERIA:
        start = time.monotonic()
        rep = fn(args.seed)
        elapsed = time.monotonic() - start
        status = "pass" if rep["pass"] else "FAIL"
        print(f'criterion {rep["criterion"]:2d} {rep["name"]}: '
              f'{status} ({elapsed:.2f}s)', file=sys.stderr)
        reports.append(rep)
    return {
        "version": __version__,
        "seed": args.seed,
        "criteria": reports,
        "all_pass": all(r["pass"] for r in reports),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetanulls",
        description="Theta characteristics, orbit classification and "
                    "certified theta constants.")
    parser.add_argument("--output", help="write the JSON report here "
                                         "instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="characteristic and class counts")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--parity", choices=["even", "odd"])
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="orbit label of a quadruple")
    p.add_argument("--genus", type=int)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbit-census", help="full census of quadruples")
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(func=cmd_orbit_census)

    p = sub.add_parser("hyperelliptic", help="partition model reports")
    p.add_argument("action", choices=["counts", "vanishing", "cut"])
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--points", help="comma-separated branch labels for cut")
    p.set_defaults(func=cmd_hyperelliptic)

    p = sub.add_parser("bielliptic", help="witness verification")
    p.add_argument("action", choices=["verify"])
    p.set_defaults(func=cmd_bielliptic)

    p = sub.add_parser("theta", help="certified theta computations")
    p.add_argument("action", choices=["eval", "transform", "split"])
    p.add_argument("--input", required=True)
    p.add_argument("--eps", type=float, default=1e-10)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("transversal", help="rank certificate for a node set")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--nodes", required=True)
    p.add_argument("--points", required=True)
    p.set_defaults(func=cmd_transversal)

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_all)

    return parser


def _emit(report: dict, path) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in vars(args).items()
              if k not in ("func", "output") and v is not None}
    try:
        payload = args.func(args)
    except MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ResourceCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    report = {"version": __version__, "config": config}
    report.update(payload)
    _emit(report, args.output)
    failed = report.get("all_pass") is False or report.get("pass") is False
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
