"""Command-line front end: exact values, reproduction tables, oracles, verify.

Every run emits JSON lines (or CSV with --format csv): first a config record
echoing the resolved arguments, then one record per result.  Exact values are
printed as "p/q" strings next to float mirrors, so reproduction tables can be
diffed bit-for-bit.  Exit codes: 0 ok, 1 verification failure, 2 bad usage.

Independent n-values may be evaluated in parallel; the SELMAT_THREADS
environment variable caps the worker count (default 1, fully sequential).
Output order always follows input order.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import verify as verify_mod
from .combinat import format_partition, parse_partition
from .exact import format_rational, to_float
from .jack import jack_in_monomials, kadell_ratio, principal_specialization
from .moments import (
    asymptotic_expansion,
    beta_remark_combination,
    ensemble,
    ensemble_moments,
    richardson_limit,
)
from .oracle import (
    QuadratureSpec,
    ball_moment_estimate,
    haar_sample,
    mcmc_eigenvalue_sample,
    quadrature,
)
from .selberg import SelbergParams, aomoto_general_ratio, aomoto_ratio, selberg_I0
from .weingarten import covariance_report, negcorr_report, wg_orthogonal, wg_unitary


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SELMAT_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    """Map preserving input order, parallel only if SELMAT_THREADS > 1."""
    workers = min(_threads(), max(1, len(items)))
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


class Emitter:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out
        self.rows = []

    def emit(self, record: dict):
        if self.fmt == "json":
            self.out.write(json.dumps(record, sort_keys=True, default=str) + "\n")
        else:
            self.rows.append(record)

    def close(self):
        if self.fmt == "csv" and self.rows:
            keys = sorted({k for r in self.rows for k in r})
            writer = csv.DictWriter(self.out, fieldnames=keys)
            writer.writeheader()
            for r in self.rows:
                writer.writerow({k: r.get(k, "") for k in keys})


def _frac(s: str) -> Fraction:
    return Fraction(s)


def _n_list(s: str) -> list[int]:
    out = []
    for tok in s.split(","):
        tok = tok.strip()
        if ":" in tok:  # a:b means the inclusive range a..b
            a, b = tok.split(":")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(tok))
    return out


def _exact_record(value, extra=None) -> dict:
    ap = to_float(value)
    rec = dict(extra or {})
    if isinstance(value, Fraction):
        rec["exact"] = format_rational(value)
    else:  # GammaProduct
        simplified = value.simplify()
        if isinstance(simplified, Fraction):
            rec["exact"] = format_rational(simplified)
        else:
            rec["exact_gamma"] = simplified.to_json()
    rec["float"] = ap.value
    rec["log_value"] = ap.log_value
    return rec


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="selmat", description=__doc__)
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("selberg", help="Selberg integral I0(n; u, w, kappa)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=_frac, required=True)
    p.add_argument("--w", type=_frac, required=True)
    p.add_argument("--kappa", type=_frac, required=True)

    p = sub.add_parser("aomoto", help="Aomoto ratios I_m/I0 and I_{m1,m2,m3}/I0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=_frac, required=True)
    p.add_argument("--w", type=_frac, required=True)
    p.add_argument("--kappa", type=_frac, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--m1", type=int, default=None)
    p.add_argument("--m2", type=int, default=0)
    p.add_argument("--m3", type=int, default=0)

    p = sub.add_parser("jack", help="Jack polynomial expansion / principal value")
    p.add_argument("mode", choices=("expand", "principal"))
    p.add_argument("--lam", type=parse_partition, required=True)
    p.add_argument("--kappa", type=_frac, required=True)
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("kadell", help="Kadell ratio I(lambda)/I(0)")
    p.add_argument("--lam", type=parse_partition, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=_frac, required=True)
    p.add_argument("--w", type=_frac, required=True)
    p.add_argument("--kappa", type=_frac, required=True)

    p = sub.add_parser("moments", help="ensemble moment report at one n")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--convention", choices=("forced", "paper"), default="forced")

    for name in ("variance", "sigma"):
        p = sub.add_parser(name, help=f"{name} over an n-list with extrapolated limit")
        p.add_argument("--ensemble", required=True)
        p.add_argument("--n-list", type=_n_list, required=True)
        p.add_argument("--convention", choices=("forced", "paper"), default="forced")

    p = sub.add_parser("asympt", help="exact Laurent expansion of a named quantity")
    p.add_argument("--quantity", required=True,
                   help="x2|x1x1|x2x2|x4|fm-x2|fm-x2x2|fm-x4|remark|var|sigma2")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--kappa", type=_frac, default=None)
    p.add_argument("--beta", type=_frac, default=None)
    p.add_argument("--ensemble", default=None)
    p.add_argument("--convention", choices=("forced", "paper"), default="forced")

    p = sub.add_parser("remark-beta", help="general-beta box combination over an n-list")
    p.add_argument("--beta", type=_frac, required=True)
    p.add_argument("--n-list", type=_n_list, required=True)

    p = sub.add_parser("covariance", help="covariance report (hermitian | symmetric)")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--convention", choices=("forced", "paper"), default="forced")

    p = sub.add_parser("negcorr", help="entrywise correlation report (field r | c)")
    p.add_argument("--field", choices=("r", "c"), required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("weingarten", help="Weingarten function values")
    p.add_argument("group", choices=("unitary", "orthogonal"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cycle-type", type=parse_partition, default=None)
    p.add_argument("--coset-type", type=parse_partition, default=None)
    p.add_argument("--z", type=_frac, required=True)
    p.add_argument("--w", type=_frac, default=None)

    p = sub.add_parser("oracle", help="numeric oracles")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("quad", help="tensor-product quadrature")
    q.add_argument("--kind", choices=("selberg", "loggas"), default="selberg")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--u", type=_frac, default=Fraction(1))
    q.add_argument("--w", type=_frac, default=Fraction(1))
    q.add_argument("--kappa", type=_frac, default=Fraction(1))
    q.add_argument("--a", type=int, default=1)
    q.add_argument("--b", type=int, default=2)
    q.add_argument("--c", type=int, default=0)
    q.add_argument("--payload", default="one",
                   help="one | monomial:2,1 | elementary:2 | aomoto:1,1,0 | shifted:x2")
    q.add_argument("--points", type=int, default=40)
    s = osub.add_parser("sample", help="rejection sampling from an operator-norm ball")
    s.add_argument("--ensemble", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)
    m = osub.add_parser("mcmc", help="metropolis eigenvalue sampler")
    m.add_argument("--a", type=int, required=True)
    m.add_argument("--b", type=int, required=True)
    m.add_argument("--c", type=int, default=0)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--steps", type=int, default=20_000)
    m.add_argument("--chains", type=int, default=2)
    m.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)
    m.add_argument("--payload", action="append", default=None,
                   help="sum_sq | sum_quartic | cross_sq (repeatable)")
    m.add_argument("--burn-in", type=int, default=10_000)
    h = osub.add_parser("haar", help="haar moment sanity sample")
    h.add_argument("--group", choices=("unitary", "orthogonal"), required=True)
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--count", type=int, default=20_000)
    h.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)

    p = sub.add_parser("verify", help="run the full acceptance suite")
    p.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)
    p.add_argument("--mc-count", type=int, default=1_000_000)
    p.add_argument("--points", type=int, default=40)
    p.add_argument("--criteria", default=None, help="comma list, e.g. C1,C2")
    return ap


def _config_record(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "format"}
    for k, v in list(cfg.items()):
        if isinstance(v, Fraction):
            cfg[k] = format_rational(v)
        elif isinstance(v, tuple):
            cfg[k] = format_partition(v)
    return {"config": cfg, "threads": _threads()}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    em = Emitter(args.format, sys.stdout)
    em.emit(_config_record(args))
    try:
        code = _dispatch(args, em)
    finally:
        em.close()
    return code


def _dispatch(args, em: Emitter) -> int:
    cmd = args.command
    if cmd == "selberg":
        v = selberg_I0(SelbergParams(args.n, args.u, args.w, args.kappa))
        em.emit(_exact_record(v, {"n": args.n}))
        return 0
    if cmd == "aomoto":
        p = SelbergParams(args.n, args.u, args.w, args.kappa)
        if args.m is not None:
            em.emit(_exact_record(aomoto_ratio(p, args.m), {"m": args.m}))
        elif args.m1 is not None:
            v = aomoto_general_ratio(p, args.m1, args.m2, args.m3)
            em.emit(_exact_record(v, {"m1": args.m1, "m2": args.m2, "m3": args.m3}))
        else:
            raise SystemExit("aomoto needs --m or --m1/--m2/--m3")
        return 0
    if cmd == "jack":
        if args.mode == "expand":
            poly = jack_in_monomials(args.lam, args.kappa)
            em.emit(
                {
                    "lambda": format_partition(args.lam),
                    "kappa": format_rational(args.kappa),
                    "coefficients": {
                        format_partition(mu): format_rational(c) for mu, c in poly.coeffs
                    },
                }
            )
        else:
            if args.n is None:
                raise SystemExit("jack principal needs --n")
            v = principal_specialization(args.lam, args.kappa, args.n)
            em.emit(_exact_record(v, {"lambda": format_partition(args.lam), "n": args.n}))
        return 0
    if cmd == "kadell":
        v = kadell_ratio(args.lam, args.n, args.u, args.w, args.kappa)
        em.emit(_exact_record(v, {"lambda": format_partition(args.lam), "n": args.n}))
        return 0
    if cmd == "moments":
        em.emit(ensemble_moments(ensemble(args.ensemble), args.n, args.convention).to_json())
        return 0
    if cmd in ("variance", "sigma"):
        spec = ensemble(args.ensemble)
        reports = _pmap(lambda n: ensemble_moments(spec, n, args.convention), args.n_list)
        fieldname = "var" if cmd == "variance" else "sigma2"
        for rep in reports:
            v = getattr(rep, fieldname)
            em.emit(
                {
                    "n": rep.n,
                    "ensemble": spec.name,
                    "convention": args.convention,
                    fieldname: format_rational(v),
                    f"{fieldname}_float": float(v),
                }
            )
        if len(reports) >= 3:
            lim = richardson_limit(
                [(r.n, float(getattr(r, fieldname))) for r in reports]
            )
            em.emit({"extrapolated_limit": lim, "ensemble": spec.name, "quantity": fieldname})
        return 0
    if cmd == "asympt":
        rf, coeffs = asymptotic_expansion(
            args.quantity,
            args.order,
            kappa=args.kappa,
            beta=args.beta,
            ensemble_name=args.ensemble,
            convention=args.convention,
        )
        em.emit(
            {
                "quantity": args.quantity,
                "rational_function": rf.to_json(),
                "laurent": [format_rational(c) for c in coeffs],
                "laurent_float": [float(c) for c in coeffs],
            }
        )
        return 0
    if cmd == "remark-beta":
        vals = _pmap(lambda n: (n, beta_remark_combination(n, args.beta)), args.n_list)
        for n, v in vals:
            em.emit(_exact_record(v, {"n": n, "beta": format_rational(args.beta)}))
        _, lc = asymptotic_expansion("remark", 0, beta=args.beta)
        em.emit(
            {
                "beta": format_rational(args.beta),
                "constant_term": format_rational(lc[0]),
                "target_1_over_64beta": format_rational(Fraction(1) / (64 * args.beta)),
            }
        )
        return 0
    if cmd == "covariance":
        em.emit(covariance_report(args.ensemble, args.n, args.convention).to_json())
        return 0
    if cmd == "negcorr":
        rep = negcorr_report(args.field, args.n)
        em.emit(
            {
                "field": rep["field"],
                "n": rep["n"],
                "cross": format_rational(rep["cross"]),
                "same_row": format_rational(rep["same_row"]),
                "second_moment": format_rational(rep["second_moment"]),
                "second_moment_sq": format_rational(rep["second_moment_sq"]),
            }
        )
        return 0
    if cmd == "weingarten":
        if args.group == "unitary":
            ct = args.cycle_type or args.coset_type
            if ct is None:
                raise SystemExit("need --cycle-type")
            v = wg_unitary(ct, args.k, args.z, args.w)
        else:
            ct = args.coset_type or args.cycle_type
            if ct is None:
                raise SystemExit("need --coset-type")
            v = wg_orthogonal(ct, args.k, args.z)
        em.emit(_exact_record(v, {"group": args.group, "k": args.k, "type": format_partition(ct)}))
        return 0
    if cmd == "oracle":
        return _dispatch_oracle(args, em)
    if cmd == "verify":
        criteria = (
            tuple(args.criteria.split(",")) if args.criteria else verify_mod.ALL_CRITERIA
        )
        results = verify_mod.run_all(
            seed=args.seed, mc_count=args.mc_count, quad_points=args.points,
            criteria=criteria, stream=None,
        )
        for r in results:
            em.emit(json.loads(verify_mod.serialize_result(r)))
        ok = all(r.passed for r in results)
        em.emit({"summary": verify_mod.summary_line(results)})
        return 0 if ok else 1
    raise SystemExit(2)


def _parse_payload(s: str) -> tuple:
    if s == "one":
        return ("one",)
    kind, _, rest = s.partition(":")
    if kind == "monomial":
        return ("monomial", parse_partition(rest))
    if kind == "elementary":
        return ("elementary", int(rest))
    if kind == "aomoto":
        return ("aomoto", tuple(int(x) for x in rest.split(",")))
    if kind == "shifted":
        return ("shifted", rest)
    raise SystemExit(f"unknown payload {s!r}")


def _dispatch_oracle(args, em: Emitter) -> int:
    oc = args.oracle_command
    if oc == "quad":
        payload = _parse_payload(args.payload)
        if args.kind == "selberg":
            spec = QuadratureSpec("selberg", args.n, payload, (args.u, args.w, args.kappa), args.points)
        else:
            spec = QuadratureSpec("loggas", args.n, payload, (args.a, args.b, args.c), args.points)
        val, err = quadrature(spec)
        em.emit({"value": val, "error_estimate": err, "points_per_axis": args.points})
        return 0
    if oc == "sample":
        n = args.n
        if args.ensemble in ("hermitian",):
            fns = {
                "T11T22": lambda T: (T[:, 0, 0] * T[:, 1, 1]).real,
                "absT12sq": lambda T: np.abs(T[:, 0, 1]) ** 2,
                "T11sq": lambda T: (T[:, 0, 0] ** 2).real,
            }
        else:
            fns = {
                "T11T22": lambda T: (T[:, 0, 0] * T[:, 1, 1]).real,
                "T12sq": lambda T: (np.abs(T[:, 0, 1]) ** 2),
                "T11sq": lambda T: (np.abs(T[:, 0, 0]) ** 2),
            }
        if n < 2:
            fns = {"T11sq": fns["T11sq"]}
        est = ball_moment_estimate(args.ensemble, n, fns, args.count, args.seed)
        for name, e in sorted(est.items()):
            em.emit({"moment": name, **e.to_json()})
        return 0
    if oc == "mcmc":
        payloads = {p: p for p in (args.payload or ["sum_sq"])}
        res = mcmc_eigenvalue_sample(
            args.a, args.b, args.c, args.n, payloads,
            steps=args.steps, chains=args.chains, seed=args.seed, burn_in=args.burn_in,
        )
        for name, e in sorted(res.items()):
            em.emit({"payload": name, **e.to_json()})
        return 0
    if oc == "haar":
        U = haar_sample(args.group, args.n, args.seed, args.count)
        m11 = np.abs(U[:, 0, 0]) ** 2
        em.emit(
            {
                "group": args.group,
                "n": args.n,
                "E_abs_U11_sq": float(m11.mean()),
                "stderr": float(m11.std(ddof=1) / len(m11) ** 0.5),
                "target": 1.0 / args.n,
                "count": args.count,
            }
        )
        return 0
    raise SystemExit(2)


if __name__ == "__main__":
    sys.exit(main())
