"""Command line interface: ``canform <command> [options]``.

Exit status is 0 when every assertion of the invoked command holds, 1 when
one fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .algebra import MultiPoly
from .graphs import (GraphError, cycle_basis_from_tree, default_tree, edge_var, graph_polynomial, laplacian,
                     load_graph, spanning_tree_polynomial, wheel)
from .identities import canonical_form_direct_at_point, canonical_form_graph
from .numeric import METHODS, canonical_integrand, feynman_integrand, mc_integrate, zeta_numeric, zeta_partial_sum
from . import suites
from .wheel import (ZetaCombo, central_factorial_row, central_identity_check, cmk, cmk_multinomial,
                    integrand_sign, spoke_product, wheel_integral_exact, wheel_integrand)

IDENTITIES = ("thm1", "bomega", "perm-sigma", "sym-trace", "jacobi", "closed-vs-direct", "amitsur")


class UsageError(Exception):
    pass


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.result: object = None
        self.lines: List[str] = []
        self.assertions: List[Tuple[str, bool]] = []

    def check(self, name: str, passed: bool):
        self.assertions.append((name, bool(passed)))

    def add_suite(self, res: suites.SuiteResult):
        self.lines.append(res.summary())
        for label in res.failures[:10]:
            self.lines.append(f"  failed: {label}")
        self.check(res.name, res.ok)

    @property
    def ok(self) -> bool:
        return all(p for _, p in self.assertions)


def _parse_tree(text: Optional[str]):
    if not text:
        return None
    try:
        return frozenset(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"bad tree {text!r}; expected comma separated edge numbers") from None


def _parse_point(text: str) -> Dict[int, Fraction]:
    out = {}
    for item in text.split(","):
        try:
            e, v = item.split("=")
            out[int(e)] = Fraction(v)
        except ValueError:
            raise UsageError(f"bad point entry {item!r}; expected edge=value") from None
    return out


def _load(args):
    g, tree = load_graph(args.graph)
    tree = _parse_tree(args.tree) or tree or default_tree(g)
    return g, tree


def cmd_laplacian(args, rep: Report):
    g, tree = _load(args)
    basis = cycle_basis_from_tree(g, tree)
    lap = laplacian(g, basis)
    psi = lap.det()
    rep.lines.append(str(lap))
    rep.lines.append(f"Ψ = {psi}")
    rep.result = {"matrix": [[str(x) for x in row] for row in lap.matrix.tolist()], "psi": str(psi),
                  "tree": sorted(tree), "cycles": [list(c) for c in basis.cycles]}
    rep.check("det equals spanning-tree polynomial", psi == spanning_tree_polynomial(g))


def cmd_integrand(args, rep: Report):
    g, tree = _load(args)
    form = canonical_form_graph(g, tree, args.chart)
    rep.result = {"integrand": form.text(), "psi": str(form.psi), "chart": form.chart,
                  "free_edges": list(form.free_edges),
                  "numerators": {str(k + 1): str(v) for k, v in sorted(form.numerators.items())}}
    rep.lines.append(form.text())
    rep.lines.append(f"Ψ = {form.psi}")
    rep.lines.append("on the chart x%d = 1, times dx%s" % (form.chart, " ∧ dx".join(map(str, form.free_edges))))
    if args.mode == "direct-at-point":
        if args.point:
            points = [_parse_point(args.point)]
        else:
            rng = random.Random(args.seed)
            points = [suites.random_point(rng, form.free_edges) for _ in range(args.points)]
        results = []
        for pt in points:
            missing = [e for e in form.free_edges if e not in pt]
            if missing:
                raise UsageError(f"point is missing edges {missing}")
            closed = form.value_at(pt)
            direct = canonical_form_direct_at_point(g, tree, form.chart, pt).top_coefficient()
            results.append({"point": {str(e): str(v) for e, v in pt.items()}, "closed": str(closed),
                            "direct": str(direct)})
            rep.lines.append(f"at {results[-1]['point']}: closed {closed}, direct {direct}")
            rep.check(f"closed equals direct at point {len(results)}", Fraction(closed) == Fraction(direct))
        rep.result["points"] = results


def cmd_wheel(args, rep: Report):
    n = args.n
    if args.mode == "exact":
        total = wheel_integral_exact(n)
        rep.result = {"integral": str(total), "sign": integrand_sign(n),
                      "numeric": total.evaluate(zeta_numeric)}
        rep.lines.append(str(total))
        rep.lines.append(f"integrand sign {integrand_sign(n):+d}, value {rep.result['numeric']:.12g}")
        rep.check(f"integral equals {n}*C({2 * n},{n})*zeta({n})", total == ZetaCombo.zeta(n, n * comb(2 * n, n)))
    elif args.mode == "integrand":
        coeffs = wheel_integrand(n)
        rep.result = {"coefficients": {str(k): str(c) for k, c in coeffs}, "sign": integrand_sign(n)}
        for k, c in coeffs:
            rep.lines.append(f"{c} * S^{k - 1} / Ψ^{k + 1}")
        if args.check:
            g, tree, _ = wheel(n)
            form = canonical_form_graph(g, tree)
            s = spoke_product(n).subs({edge_var(2 * n): 1})
            expected = {k: MultiPoly.coerce(s ** (k - 1) * c) for k, c in coeffs}
            got = {k: MultiPoly.coerce(v) for k, v in form.numerators.items()}
            rep.check("matches the closed form computed from the graph", got == expected)
    else:
        m = n - 1 if n % 2 else n
        row = central_factorial_row(m)
        rep.result = {"m": m, "c": [str(c) for c in row.values], "rescaled": [str(c) for c in row.rescaled()]}
        rep.lines.append(f"m = {m}: c_(m,k) = {', '.join(map(str, row.values))}")
        rep.lines.append(f"2^k c_(m,k) / (2k)! = {', '.join(map(str, row.rescaled()))}")
        rep.check("two formulas for c_(m,k) agree",
                  all(cmk(m, k) == cmk_multinomial(m, k) for k in range(1, m // 2 + 1)))
        rep.check("central factorial identity", central_identity_check(m))


def cmd_verify(args, rep: Report):
    n, trials, seed = args.n, args.trials, args.seed
    ident = args.identity
    if ident == "thm1":
        res = suites.thm1_suite(n, trials, seed)
    elif ident == "bomega":
        res = suites.bomega_nilpotent_suite(n, trials, seed, args.components)
    elif ident == "perm-sigma":
        res = suites.perm_sigma_suite(n, trials, seed)
    elif ident == "sym-trace":
        res = suites.sym_trace_suite(n, trials, seed)
    elif ident == "jacobi":
        res = suites.jacobi_suite(n, trials or 100, seed)
    elif ident == "closed-vs-direct":
        g, tree = load_graph(args.graph) if args.graph else wheel(n)[:2]
        res = suites.closed_vs_direct_suite(g, trials or 5, seed, tree)
    else:
        res = suites.amitsur_suite(n, trials if trials is not None else 10, seed, symbolic=n <= 2)
    rep.add_suite(res)
    rep.result = {"identity": ident, "instances": res.instances, "failures": res.failures}


def cmd_amitsur(args, rep: Report):
    res = suites.amitsur_suite(args.n, args.trials, args.seed, symbolic=args.symbolic)
    rep.add_suite(res)
    rep.result = {"instances": res.instances, "failures": res.failures}


def _expected_integral(g, kind: str, source: str) -> Optional[float]:
    if not source.startswith("wheel:"):
        return None
    n = int(source.split(":")[1])
    if kind == "feynman":
        return comb(2 * n - 2, n - 1) * zeta_numeric(2 * n - 3)
    if n % 2 == 0:
        return 0.0
    return n * comb(2 * n, n) * zeta_numeric(n)


def cmd_mc(args, rep: Report):
    g, tree = _load(args)
    if g.num_edges != 2 * g.loop_number:
        raise UsageError("Monte Carlo integration needs |E| = 2 h_G")
    psi = graph_polynomial(g, cycle_basis_from_tree(g, tree))
    if args.integrand == "feynman":
        f = feynman_integrand(g, psi)
    else:
        f = canonical_integrand(g, canonical_form_graph(g, tree), psi)
    est = mc_integrate(f, g.num_edges, args.samples, args.seed, args.method, threads=args.threads)
    rep.result = est.to_json()
    rep.result.update({"magnitude": est.magnitude, "sign": est.sign})
    rep.lines.append(f"estimate {est.value:.6g} ± {est.stderr:.2g} ({est.samples} samples, {est.method})")
    expected = args.expect if args.expect is not None else _expected_integral(g, args.integrand, args.graph)
    if expected is not None:
        rel = abs(est.magnitude - abs(expected)) / abs(expected) if expected else abs(est.magnitude)
        rep.result["expected"] = expected
        rep.lines.append(f"expected magnitude {abs(expected):.6g}, relative error {rel:.3%}")
        rep.check(f"within {args.tolerance:.0%} of {abs(expected):.6g}", rel <= args.tolerance)


def cmd_zeta_table(args, rep: Report):
    rows = []
    for s in range(args.min, args.max + 1):
        v = zeta_numeric(s)
        rows.append({"s": s, "zeta": v})
        rep.lines.append(f"zeta({s}) = {v:.15f}")
    rep.result = rows
    check = zeta_partial_sum(3, 10 ** 6) + 0.5 / 10 ** 12
    rep.check("zeta(3) against partial sum with tail", abs(zeta_numeric(3) - check) < 1e-12)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", default="wheel:3", help="wheel:N, a JSON file, or inline JSON")
    graph.add_argument("--tree", help="comma separated spanning tree edges")

    p = argparse.ArgumentParser(prog="canform", description="Invariant differential forms of graphs and matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("laplacian", parents=[common, graph], help="cycle-space Laplacian and graph polynomial")

    q = sub.add_parser("integrand", parents=[common, graph], help="closed form of the top invariant form")
    q.add_argument("--chart", type=int, help="tree edge set to 1 (default: highest tree edge)")
    q.add_argument("--mode", choices=("closed", "direct-at-point"), default="closed")
    q.add_argument("--point", help="edge=value list, e.g. 1=2,2=1/3,...")
    q.add_argument("--points", type=int, default=3, help="random points when --point is absent")
    q.add_argument("--seed", type=int, default=0)

    q = sub.add_parser("wheel", parents=[common], help="wheel integrals, integrands and c_(m,k)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--mode", choices=("exact", "integrand", "coeffs"), default="exact")
    q.add_argument("--check", action="store_true", help="compare the integrand with the graph computation")

    q = sub.add_parser("verify", parents=[common], help="run an identity suite")
    q.add_argument("--identity", choices=IDENTITIES, required=True)
    q.add_argument("--n", type=int, default=3, help="matrix size, or m for perm-sigma")
    q.add_argument("--trials", type=int, help="random instances (default: exhaustive or symbolic)")
    q.add_argument("--components", type=int, help="bomega: sampled position sets per trial")
    q.add_argument("--graph", help="closed-vs-direct: graph source (default wheel:N)")
    q.add_argument("--seed", type=int, default=0)

    q = sub.add_parser("amitsur", parents=[common], help="antisymmetrization of 2n-1 matrices")
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--trials", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--symbolic", action="store_true", help="also check generic symbolic matrices")

    q = sub.add_parser("mc", parents=[common, graph], help="Monte Carlo integral over the simplex",
                       description="Integrates f Omega over the positive orthant as the Lebesgue integral of f "
                                   "on the simplex {sum x = 1}: uniform samples (normalized exponentials), "
                                   "estimate = mean(f) / (|E|-1)!.")
    q.add_argument("--integrand", choices=("feynman", "canonical"), default="feynman")
    q.add_argument("--samples", type=int, default=10 ** 6)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--method", choices=METHODS, default="uniform-simplex")
    q.add_argument("--threads", type=int, help="worker threads (default: CANFORM_THREADS or cpu count)")
    q.add_argument("--expect", type=float, help="reference value for the tolerance check")
    q.add_argument("--tolerance", type=float, default=0.1)

    q = sub.add_parser("zeta-table", parents=[common], help="zeta values")
    q.add_argument("--min", type=int, default=2)
    q.add_argument("--max", type=int, default=13)
    return p


HANDLERS = {"laplacian": cmd_laplacian, "integrand": cmd_integrand, "wheel": cmd_wheel, "verify": cmd_verify,
            "amitsur": cmd_amitsur, "mc": cmd_mc, "zeta-table": cmd_zeta_table}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "output")}
    rep = Report(args.command, inputs)
    start = time.perf_counter()
    try:
        HANDLERS[args.command](args, rep)
    except (UsageError, GraphError, ValueError, KeyError, OSError) as exc:
        print(f"canform {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        rep.check(str(exc), False)
    elapsed = (time.perf_counter() - start) * 1000
    if args.output == "json":
        print(json.dumps({"command": rep.command, "inputs": rep.inputs, "result": rep.result,
                          "assertions": [{"name": n, "pass": p} for n, p in rep.assertions],
                          "timing_ms": round(elapsed, 3)}, indent=2, default=str))
    else:
        for line in rep.lines:
            print(line)
        for name, passed in rep.assertions:
            print(f"{'PASS' if passed else 'FAIL'} {name}")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
