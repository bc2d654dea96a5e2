"""Command-line entry point: ``c4flag <command> [options]``.

Exit codes:
    0  success
    2  usage error (bad flags or unparsable input)
    3  size cap exceeded
    4  verification failed (a proof obligation or identity did not hold)
    5  bound proven but the derived lists differ from the published ones
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import __version__
from .catalog import CATALOG_NAMES, parse_graph
from .graph6 import to_graph6
from .graphs import (
    SizeCapError, count_induced, count_subgraphs, density, enumerate_graphs,
)
from .report import Report, render_table

EXIT_OK, EXIT_USAGE, EXIT_SIZE, EXIT_VERIFY, EXIT_MISMATCH = 0, 2, 3, 4, 5


class UsageError(ValueError):
    pass


def _parts(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"parts must be comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# Commands: each returns (outputs, exit code)
# ---------------------------------------------------------------------------

def cmd_count(a):
    h, g = parse_graph(a.pattern), parse_graph(a.host)
    n = count_induced(h, g) if a.induced else count_subgraphs(h, g)
    return {"pattern": to_graph6(h), "host": to_graph6(g), "induced": a.induced, "count": n}, 0


def cmd_density(a):
    h, g = parse_graph(a.pattern), parse_graph(a.host)
    return {"pattern": to_graph6(h), "host": to_graph6(g), "induced": a.induced,
            "density": density(h, g, a.induced)}, 0


def cmd_enumerate(a):
    gs = enumerate_graphs(a.k)
    out = {"k": a.k, "count": len(gs), "graphs": [to_graph6(g) for g in gs]}
    if a.k == 4:
        from .catalog import catalog_index
        out["catalog_index"] = [catalog_index(g) for g in gs]
    return out, 0


def cmd_isomorphic(a):
    from .graphs import are_isomorphic
    g, h = parse_graph(a.first), parse_graph(a.second)
    return {"first": to_graph6(g), "second": to_graph6(h), "isomorphic": are_isomorphic(g, h)}, 0


def cmd_graph_info(a):
    from .catalog import catalog_index
    from .graphs import (
        automorphism_count, canonical_form, chromatic_number, has_color_critical_edge,
        is_complete_multipartite,
    )
    g = parse_graph(a.graph)
    classes = is_complete_multipartite(g)
    crit = has_color_critical_edge(g) if g.num_edges else None
    out = {"graph6": to_graph6(g), "n": g.n, "edges": g.num_edges,
           "canonical": to_graph6(canonical_form(g)), "automorphisms": automorphism_count(g),
           "chromatic_number": chromatic_number(g),
           "color_critical_edge": list(crit) if crit is not None else None,
           "complete_multipartite": [list(c) for c in classes] if classes is not None else None,
           "part_sizes": sorted((len(c) for c in classes), reverse=True) if classes is not None else None}
    if g.n == 4:
        out["catalog_index"] = catalog_index(g)
    return out, 0


def cmd_blowup(a):
    from .graphs import is_subgraph_of_blowup
    f, h = parse_graph(a.pattern), parse_graph(a.base)
    return {"pattern": to_graph6(f), "base": to_graph6(h), "t": a.t,
            "contained": is_subgraph_of_blowup(f, h, a.t)}, 0


def cmd_multipartite(a):
    from .multipartite import PartProfile, c4_count, c4_count_by_classes, k4_count
    p = PartProfile(_parts(a.parts))
    return {"parts": list(p.parts), "n": p.n, "c4": c4_count(p), "k4": k4_count(p),
            "c4_by_classes_met": c4_count_by_classes(p)}, 0


def cmd_turan(a):
    from .multipartite import turan_c4_asymptotic, turan_c4_count
    out = {"r": a.r, "asymptotic_density": turan_c4_asymptotic(a.r)}
    if a.n is not None:
        out["n"] = a.n
        out["exact"] = turan_c4_count(a.r, a.n)
    return out, 0


def cmd_limit_density(a):
    from .multipartite import PartFractions, asymptotic_c4_density, limit_density_vector
    fs = PartFractions.parse(a.fractions)
    vec = limit_density_vector(fs)
    return {"fractions": list(fs.fractions), "c4_density": asymptotic_c4_density(fs),
            "k4_density": vec[10], "induced_densities": vec, "basis": list(CATALOG_NAMES)}, 0


def cmd_local(a):
    from .multipartite import local_c4_profile
    parts = _parts(a.parts)
    val = local_c4_profile(parts, a.i - 1, a.n1, a.n2, a.j - 1)
    return {"parts": parts, "i": a.i, "j": a.j, "n1": a.n1, "n2": a.n2, "count": val}, 0


def cmd_shift(a):
    from .multipartite import PartProfile, shift_check
    p = PartProfile(_parts(a.parts))
    i = None if a.i is None else a.i - 1
    j = None if a.j is None else a.j - 1
    before, after = shift_check(p, i, j)
    return {"parts": list(p.parts), "before": before, "after": after,
            "strict_increase": after > before}, (0 if after > before else EXIT_VERIFY)


def cmd_stability(a):
    from .multipartite import stability_expansion
    s = stability_expansion()
    out = {"identical": s.identical,
           "expansion": [str(c) for c in s.recomputed.coeffs],
           "closed_form": [str(c) for c in s.closed_form.coeffs],
           "g": str(s.g)}
    if a.r is not None:
        r0 = Fraction(a.r)
        out["r"] = str(r0)
        out["expansion_at_r"] = [str(c) for c in s.at(r0).coeffs]
        out["g_at_r"] = s.g(r0)
    return out, (0 if s.identical else EXIT_VERIFY)


def cmd_flags(a):
    from .flags import TYPES, FlagCombination, enumerate_flags, expand_square, flag_product, unlabel
    sigma = TYPES[a.type]
    flags = enumerate_flags(sigma, a.order)
    rows = []
    for k, f in enumerate(flags):
        q, g = unlabel(f)
        rows.append({"index": k, "flag": f.to_text(), "q": q, "unlabeled": to_graph6(g)})
    out = {"type": a.type, "order": a.order, "flags": rows}
    if a.product:
        i, j = a.product
        prod = flag_product(flags[i], flags[j])
        out["product"] = [{"flag": f.to_text(), "coefficient": c} for f, c in prod.items()]
    if a.square:
        coeffs = [Fraction(x) for x in a.square.split(",")]
        if len(coeffs) != len(flags):
            raise UsageError(f"--square needs {len(flags)} coefficients")
        alpha = FlagCombination.zero(sigma, a.order)
        for c, f in zip(coeffs, flags):
            alpha.add_term(c, f)
        form = expand_square(alpha)
        out["square"] = {"form": form.to_strings(), "times_6": form.scale(6).to_strings(),
                         "basis": list(CATALOG_NAMES)}
    return out, 0


def cmd_flag_density(a):
    from .flags import Flag, flag_density
    small, big = Flag.from_text(a.small), Flag.from_text(a.big)
    return {"small": small.to_text(), "big": big.to_text(), "density": flag_density(small, big)}, 0


def cmd_rational(a):
    from .exact import parse_rational_fn
    from .sturm import nonneg_on_ray, positive_on_ray
    f = parse_rational_fn(a.expr)
    out = {"expr": a.expr, "canonical": str(f)}
    if a.at is not None:
        out["at"] = Fraction(a.at)
        out["value"] = f(Fraction(a.at))
    if a.ray is not None:
        start = Fraction(a.ray)
        out["ray_start"] = start
        out["strict"] = a.strict
        if f == 0:
            out["holds"] = not a.strict
        else:
            # certified sign: numerator >= 0 (or > 0) and denominator > 0 on [start, inf)
            num = (positive_on_ray if a.strict else nonneg_on_ray)(f.num, start)
            den = positive_on_ray(f.den, start)
            out["holds"] = num.holds and den.holds
            out["numerator_certificate"] = num.to_dict()
            out["denominator_certificate"] = den.to_dict()
    return out, 0


def cmd_qform(a):
    from .catalog import catalog_density_vector
    from .certificate import compute_Q, compute_Q0
    from .multipartite import PartFractions, limit_density_vector
    form = compute_Q0() if a.j == 0 else compute_Q(a.j)
    out = {"j": a.j, "form": form.to_strings(), "basis": list(CATALOG_NAMES)}
    if a.r is not None:
        form = form.specialize(Fraction(a.r))
        out["r"] = Fraction(a.r)
        out["form_at_r"] = form.to_strings()
    vec = None
    if a.graph is not None:
        vec = catalog_density_vector(parse_graph(a.graph))
    elif a.turan is not None:
        vec = limit_density_vector(PartFractions.balanced(a.turan))
    elif a.vector is not None:
        vec = [Fraction(x) for x in a.vector.split(",")]
        if len(vec) != 11:
            raise UsageError("--vector needs 11 comma-separated densities")
    if vec is not None:
        out["density_vector"] = vec
        out["value"] = form.evaluate(vec)
    return out, 0


def cmd_verify(a):
    from .certificate import run, slack_table
    rep = run()
    out = rep.to_dict()
    if not a.full:
        for p in out["weight_proofs"] + out["slack_proofs"]:
            for key in ("numerator_certificate", "denominator_certificate"):
                if key in p:
                    cert = p[key]
                    p[key] = {k: cert[k] for k in ("poly", "ray_start", "holds", "roots_in_open_ray",
                                                    "value_at_start", "leading_sign")}
    out["all_certificates_recheck"] = all(p.recheck() for p in rep.weight_proofs + rep.slack_proofs)
    out["slack_table"] = slack_table(rep)
    code = EXIT_OK
    if not (rep.bound_proven and out["all_certificates_recheck"]):
        code = EXIT_VERIFY
    elif not rep.reference_match:
        code = EXIT_MISMATCH
    return out, code


def _search_kw(a):
    return {"jobs": a.jobs, "resume": a.resume, "allow_n8": a.allow_n8,
            "chunk_bits": a.chunk_bits}


def cmd_extremal(a):
    from .search import max_count
    res = max_count(a.n, parse_graph(a.target), parse_graph(a.forbid), **_search_kw(a))
    return res.to_dict(), 0


def cmd_k4_bound(a):
    from .search import k4_bound_check
    res = k4_bound_check(a.n, a.r, **_search_kw(a))
    return res.to_dict(), (0 if res.maximum == res.turan_value else EXIT_VERIFY)


def cmd_near(a):
    from .search import near_extremal_cocherry_scan
    kw = _search_kw(a)
    kw.pop("resume")
    return near_extremal_cocherry_scan(a.n, a.r, a.slack, **kw).to_dict(), 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _search_flags(p):
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--resume", help="JSON file recording finished chunks")
    p.add_argument("--allow-n8", action="store_true", help="permit the 2^28-graph n=8 scan")
    p.add_argument("--chunk-bits", type=int, default=20, help="log2 of graphs per chunk")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="c4flag", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"c4flag {__version__}")
    ap.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)
    # --format is also accepted after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    for name, fn, hlp in (("count", cmd_count, "N(H,G) or N_I(H,G)"),
                          ("density", cmd_density, "d(H,G) or P(H,G)")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("pattern", help="graph name, catalog index or graph6")
        p.add_argument("host")
        p.add_argument("--induced", action="store_true")
        p.set_defaults(func=fn)

    p = sub.add_parser("isomorphic", help="test two graphs for isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_isomorphic)

    p = sub.add_parser("graph-info", help="canonical form, chromatic number, critical edge, multipartite classes")
    p.add_argument("graph")
    p.set_defaults(func=cmd_graph_info)

    p = sub.add_parser("blowup-contains", help="is PATTERN a subgraph of the t-blow-up of BASE")
    p.add_argument("pattern")
    p.add_argument("base")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("enumerate-graphs", help="isomorphism classes on k <= 7 vertices")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("multipartite-count", help="C4 and K4 counts of K_{t1..tr}")
    p.add_argument("--parts", required=True, help="e.g. 3,2,2")
    p.set_defaults(func=cmd_multipartite)

    p = sub.add_parser("turan", help="C4 count of T_r(n) and its limit density")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_turan)

    p = sub.add_parser("limit-density", help="limit induced densities of K_{a_1 n, ..., a_r n}")
    p.add_argument("--fractions", required=True, help="e.g. 1/2,1/2")
    p.set_defaults(func=cmd_limit_density)

    p = sub.add_parser("local-count", help="C4 copies through one vertex, c(v,n1,n2)")
    p.add_argument("--parts", required=True)
    p.add_argument("--i", type=int, required=True, help="class of v (1-based)")
    p.add_argument("--j", type=int, required=True, help="second class (1-based)")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("shift-check", help="move one vertex from class i to class j")
    p.add_argument("--parts", required=True)
    p.add_argument("--i", type=int, help="source class in the sorted profile (1-based)")
    p.add_argument("--j", type=int, help="target class (1-based)")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("stability", help="C4 density near the balanced profile as a polynomial in eta")
    p.add_argument("--r", help="specialise r (rational)")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("flags", help="flags of a 2-vertex type, products and squares")
    p.add_argument("--type", choices=("sigma1", "sigma2"), required=True)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--product", type=int, nargs=2, metavar=("I", "J"))
    p.add_argument("--square", help="comma-separated coefficients over the listed flags")
    p.set_defaults(func=cmd_flags)

    p = sub.add_parser("flag-density", help="density of one flag in a larger flag of the same type")
    p.add_argument("small", help="graph6:labels, labels are 0-based vertices")
    p.add_argument("big")
    p.set_defaults(func=cmd_flag_density)

    p = sub.add_parser("rational", help="canonical form, value and ray sign of an expression in r")
    p.add_argument("--expr", required=True, help='e.g. "3r^2-11r+9"')
    p.add_argument("--at", help="evaluate at this rational")
    p.add_argument("--ray", help="certify the sign on [RAY, infinity)")
    p.add_argument("--strict", action="store_true", help="certify > 0 instead of >= 0")
    p.set_defaults(func=cmd_rational)

    p = sub.add_parser("qform", help="derived Q_j as a density form, optionally evaluated")
    p.add_argument("--j", type=int, choices=(0, 1, 2, 3), required=True)
    p.add_argument("--r", help="specialise r (rational)")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--graph", help="evaluate on the catalog densities of a graph")
    src.add_argument("--turan", type=int, help="evaluate on the limit densities of T_k(n)")
    src.add_argument("--vector", help="evaluate on 11 comma-separated densities")
    p.set_defaults(func=cmd_qform)

    p = sub.add_parser("verify-certificate", help="derive and prove the C4 density certificate")
    p.add_argument("--full", action="store_true", help="include full Sturm chains")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extremal-search", help="ex(n, H, F) by exhaustive scan")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", default="C4")
    p.add_argument("--forbid", default="K4")
    _search_flags(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("k4-bound", help="max K4 count over K_{r+1}-free graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    _search_flags(p)
    p.set_defaults(func=cmd_k4_bound)

    p = sub.add_parser("near-extremal", help="co-cherries in near-extremal K_{r+1}-free graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--slack", type=int, default=0)
    _search_flags(p)
    p.set_defaults(func=cmd_near)
    return ap


def _inputs(a) -> dict:
    return {k: v for k, v in vars(a).items() if k not in ("func", "command", "format")}


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        outputs, code = a.func(a)
    except SizeCapError as exc:
        print(f"c4flag: size cap: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ValueError, KeyError, IndexError) as exc:
        print(f"c4flag: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = Report(a.command, _inputs(a), outputs, {"seconds": round(time.perf_counter() - t0, 4)})
    print(rep.to_json() if a.format == "json" else render_table(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
