"""Command line interface: ``rlctkit <command> [flags]``.

Every command writes one JSON document (or a text rendering with
``--format text``) to stdout. Exit status is 0 on success, 2 for inputs the
library does not support and 1 for other errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

import numpy as np

from . import asympt, models, numeric, polyhedra
from .algebra import Ideal, as_fraction, format_fraction, ideal_from_json, parse_polynomial
from .nondegen import is_function_nondegenerate, is_sos_nondegenerate
from .rlct import (RlctPair, jacobian_rank_bound, pair_min, rlct_constant_rank,
                   rlct_newton_bound, rlct_region_orthant_chain)


class Unsupported(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def _read_arg(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:]) as fh:
            return fh.read()
    return value


def _json_arg(value: str):
    return json.loads(_read_arg(value))


def _int_list(value: str) -> list[int]:
    return [int(x) for x in value.split(",") if x.strip()]


def _load_ideal(args) -> Ideal:
    if args.ideal:
        return ideal_from_json(_json_arg(args.ideal))
    if getattr(args, "poly", None):
        return Ideal((_load_poly(args),), _poly_vars(args))
    raise argparse.ArgumentTypeError("one of --ideal or --poly is required")


def _poly_vars(args) -> tuple[str, ...]:
    text = _read_arg(args.poly)
    if args.vars:
        return tuple(v.strip() for v in args.vars.split(","))
    found = []
    for name in re.findall(r"[A-Za-z_][A-Za-z_0-9']*", text):
        if name not in found:
            found.append(name)
    return tuple(sorted(found))


def _load_poly(args):
    return parse_polynomial(_read_arg(args.poly), _poly_vars(args))


def _tau(args, d: int):
    if args.tau is None:
        return (0,) * d
    tau = _int_list(args.tau)
    if len(tau) != d:
        raise ValueError(f"--tau needs {d} entries")
    return tuple(tau)


def _load_q(value: str):
    obj = _json_arg(value)
    if isinstance(obj, dict):
        obj = obj["q"]
    return [[as_fraction(x) if isinstance(x, str) else x for x in row] for row in obj]


def _load_table(value: str | None) -> models.ContingencyTable:
    if value is None or value == "case-study":
        return models.ContingencyTable.from_matrix(models.CASE_STUDY_COUNTS)
    return models.read_table_csv(value)


def _pair_arg(value: str) -> tuple[Fraction, int]:
    lam, _, theta = value.partition(",")
    return Fraction(lam), int(theta or 1)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_newton(args):
    ideal = _load_ideal(args)
    P = polyhedra.newton_polyhedron(ideal)
    out = P.to_json()
    dist, face = polyhedra.tau_distance(P, _tau(args, ideal.ambient_dim))
    out["tau_distance"] = {"l": format_fraction(dist.l), "theta": dist.theta, "face": face.to_json()}
    if args.faces:
        out["compact_faces"] = [f.to_json() for f in polyhedra.compact_faces(P)]
    return out


def cmd_rlct(args):
    ideal = _load_ideal(args)
    d = ideal.ambient_dim
    tau = _tau(args, d)
    if args.region:
        region = numeric.Region.from_json(_json_arg(args.region), dim=d)
        if region.kind != "chain":
            raise Unsupported("rlct --region supports chain regions only")
        exps = ideal.monomial_exponents()
        if exps is None or len(exps) != 1:
            raise Unsupported("chain regions are supported for a single monomial")
        return rlct_region_orthant_chain(exps[0], region.chain, tau).to_json()
    pair = None
    if not any(tau):
        pair = rlct_constant_rank(ideal, seed=args.seed)
    if pair is None:
        pair = rlct_newton_bound(ideal, tau, seed=args.seed, starts=args.starts)
        if not pair.exact and not any(tau):
            pair = pair_min([pair, jacobian_rank_bound(ideal)]).with_exact(False)
    return pair.to_json()


def cmd_nondegen(args):
    opts = {"seed": args.seed, "starts": args.starts, "steps": args.steps}
    if args.poly and not args.ideal:
        return is_function_nondegenerate(_load_poly(args), **opts).to_json()
    return is_sos_nondegenerate(_load_ideal(args), **opts).to_json()


def cmd_asympt(args):
    kappa = _int_list(args.kappa)
    tau = _int_list(args.tau) if args.tau else None
    eps = as_fraction(args.epsilon)
    L = asympt.zeta_monomial_box(kappa, tau, eps)
    out = L.to_json()
    out["coefficients"] = asympt.laplace_coeffs(L).to_json()
    return out


def cmd_laplace_fit(args):
    if args.ideal:
        gens = list(_load_ideal(args).generators)
        convention = args.convention or numeric.IDEAL
    else:
        gens = [_load_poly(args)]
        convention = args.convention or numeric.FUNCTION
    d = gens[0].ambient_dim
    region = (numeric.Region.from_json(_json_arg(args.region), dim=d) if args.region
              else numeric.Region.box(d, 0.0, 1.0))
    grid = ([float(x) for x in args.n_grid.split(",")] if args.n_grid
            else numeric.default_n_grid())
    fit, rows = numeric.laplace_fit(gens, region, convention, grid, seed=args.seed)
    if args.rows_csv:
        with open(args.rows_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "Z", "stderr"])
            w.writerows(rows)
    return {"fit": fit.to_json(), "rows": [{"N": n, "Z": z, "stderr": s} for n, z, s in rows]}


def cmd_model_score(args):
    table = _load_table(args.table)
    q = _load_q(args.q) if args.q else [list(r) for r in models.PRINTED_Q]
    out = {"loglik": models.score_rlct(table, q, (0, 1))}
    out["bic"] = models.score_bic(table, q, args.d)
    stratum = None
    if args.pair:
        lam, theta = _pair_arg(args.pair)
    else:
        stratum, pair = models.classify_332(q)
        lam, theta = pair.lam, pair.theta
    out["rlct"] = models.score_rlct(table, q, (lam, theta))
    out["pair"] = {"lambda": format_fraction(Fraction(lam)), "theta": theta}
    out["stratum"] = stratum.tag if stratum else None
    if args.exact is not None:
        out["exact"] = args.exact
    return out


def cmd_model_em(args):
    table = _load_table(args.table)
    fit = models.em_fit(table, args.restarts, args.seed, max_iter=args.max_iter)
    return fit.to_json()


def cmd_model_classify(args):
    stratum, pair = models.classify_332(_load_q(args.q), zero_tol=args.zero_tol)
    out = {"stratum": stratum.tag, "lambda": format_fraction(pair.lam), "theta": pair.theta}
    if args.certificate:
        out["certificate"] = stratum.certificate
    return out


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------

def _render(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if {"lambda", "theta", "exact"} <= obj.keys():
            rel = "" if obj["exact"] else "≤ "
            lines.append(f"{pad}{rel}({obj['lambda']}, {obj['theta']})")
            return lines
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            lines.append(pad + ", ".join(str(x) for x in obj))
        else:
            for x in obj:
                sub = _render(x, indent + 1)
                if sub:
                    sub[0] = pad + "- " + sub[0].lstrip()
                lines += sub
    else:
        lines.append(f"{pad}{obj}")
    return lines


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlctkit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def ideal_flags(p):
        p.add_argument("--ideal", help='inline JSON {"vars": [...], "gens": [...]} or @file')
        p.add_argument("--poly", help="a single polynomial (text or @file)")
        p.add_argument("--vars", help="comma separated variables for --poly")
        p.add_argument("--tau", help="comma separated amplitude exponents")

    p = sub.add_parser("newton", parents=[common], help="Newton polyhedron and tau-distance")
    ideal_flags(p)
    p.add_argument("--faces", action="store_true", help="also list compact faces")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("rlct", parents=[common], help="RLCT of an ideal at the origin")
    ideal_flags(p)
    p.add_argument("--region", help="chain region JSON for a monomial")
    p.add_argument("--starts", type=int, default=200)
    p.set_defaults(func=cmd_rlct)

    p = sub.add_parser("nondegen", parents=[common], help="nondegeneracy test")
    ideal_flags(p)
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--steps", type=int, default=100)
    p.set_defaults(func=cmd_nondegen)

    p = sub.add_parser("asympt", parents=[common], help="monomial zeta poles and Laplace coefficients")
    p.add_argument("--kappa", required=True)
    p.add_argument("--tau")
    p.add_argument("--epsilon", default="1")
    p.set_defaults(func=cmd_asympt)

    p = sub.add_parser("laplace-fit", parents=[common], help="numeric Laplace integrals and a (lambda, theta) fit")
    ideal_flags(p)
    p.add_argument("--region", help='region JSON, e.g. {"kind": "box", "lo": [-1,-1], "hi": [1,1]}')
    p.add_argument("--n-grid", help="comma separated N values")
    p.add_argument("--convention", choices=(numeric.FUNCTION, numeric.IDEAL))
    p.add_argument("--rows-csv", help="also write the N, Z, stderr rows here")
    p.set_defaults(func=cmd_laplace_fit)

    p = sub.add_parser("model-score", parents=[common], help="BIC and RLCT scores of a 3x3 table")
    p.add_argument("--table", help="CSV of counts (default: the 132-patient table)")
    p.add_argument("--q", help="JSON 3x3 matrix (default: the published ML distribution)")
    p.add_argument("--pair", help="lambda,theta (default: from classify)")
    p.add_argument("--d", type=int, default=9)
    p.add_argument("--exact", type=float, help="reference log marginal likelihood to echo")
    p.set_defaults(func=cmd_model_score)

    p = sub.add_parser("model-em", parents=[common], help="EM for the 3x3 mixture model")
    p.add_argument("--table", help="CSV of counts (default: the 132-patient table)")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--max-iter", type=int, default=100_000)
    p.set_defaults(func=cmd_model_em)

    p = sub.add_parser("model-classify", parents=[common], help="stratum of a 3x3 distribution")
    p.add_argument("--q", required=True, help="JSON 3x3 matrix or @file")
    p.add_argument("--zero-tol", type=float, default=1e-9)
    p.add_argument("--certificate", action="store_true")
    p.set_defaults(func=cmd_model_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (Unsupported, models.UnsupportedBoundaryError, models.NotInModelError,
            NotImplementedError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report and exit nonzero
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(out, default=_json_default))
    else:
        print("\n".join(_render(json.loads(json.dumps(out, default=_json_default)))))
    return 0


def _json_default(x):
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialise {type(x).__name__}")


run = main

if __name__ == "__main__":
    sys.exit(main())
