"""Command line front end: wildmono <command> ...

Exit codes: 0 all checks passed, 1 some check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import deformdata as dd
from . import groups, padic, ramification as ram, stablegraph as sg
from .numtheory import fmt_rational, parse_rational


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    rule: str | None = None

    def line(self):
        tag = "PASS" if self.ok else "FAIL"
        rule = f" [{self.rule}]" if self.rule else ""
        detail = f": {self.detail}" if self.detail else ""
        return f"{tag}{rule} {self.name}{detail}"


@dataclass
class Report:
    command: str
    info: list = field(default_factory=list)  # (key, value) pairs
    checks: list = field(default_factory=list)

    @property
    def exit_code(self):
        return 0 if all(c.ok for c in self.checks) else 1

    def add(self, key, value):
        self.info.append((key, value))

    def check(self, name, ok, detail="", rule=None):
        self.checks.append(Check(name, bool(ok), detail, rule))

    def text(self):
        out = [f"# {self.command}"]
        out += [f"{k}: {v}" for k, v in self.info]
        out += [c.line() for c in self.checks]
        out.append(f"result: {'ok' if self.exit_code == 0 else 'FAILED'}")
        return "\n".join(out)

    def to_json(self):
        return {
            "command": self.command,
            "info": {k: _jsonable(v) for k, v in self.info},
            "checks": [{"name": c.name, "status": "pass" if c.ok else "fail",
                        "rule": c.rule, "detail": c.detail} for c in self.checks],
            "exit_code": self.exit_code,
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return fmt_rational(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def _fmt_seq(xs):
    return "(" + ", ".join(fmt_rational(Fraction(x)) for x in xs) + ")"


class UsageError(Exception):
    pass


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"expected comma separated integers, got {text!r}") from exc


def _rationals(text):
    try:
        return tuple(parse_rational(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load(path):
    """Read JSON from a path, or from a bundled fixture of that name."""
    from pathlib import Path

    from . import fixture_path
    if not Path(path).exists():
        alt = fixture_path(Path(path).name.removesuffix(".json"))
        if alt.exists():
            path = alt
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# -- commands --------------------------------------------------------------

def cmd_analyze_group(args):
    rep = Report(f"analyze-group {args.spec} --p {args.p}")
    try:
        spec = groups.parse_group_spec(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep.add("group", spec.describe())
    try:
        s = groups.sylow_analyze(spec, args.p, method=args.method)
    except groups.OrderCapExceeded as exc:
        rep.check("sylow analysis", False, str(exc))
        return rep
    rep.add("order", s.group_order)
    rep.add("n", s.n)
    rep.add("sylow cyclic", s.is_cyclic)
    rep.add("m_G", s.m_G)
    rep.add("center has p-element", s.center_has_p)
    rep.add("method", s.method)
    rep.check("sylow analysis", True)
    if args.quotient:
        try:
            qr = groups.quotient_structure(spec, args.p)
            rep.add("largest normal prime-to-p subgroup", qr.N_order)
            rep.add("quotient", qr.shape_text)
            rep.check("quotient structure", True)
        except groups.NoNormalPSubgroup as exc:
            rep.check("quotient structure", False, str(exc))
    if args.triple:
        if spec.kind != "sl2":
            raise UsageError("--triple needs an sl2 group")
        orders = _ints(args.triple)
        if len(orders) != 3:
            raise UsageError("--triple takes three orders")
        try:
            t = groups.find_sl2_triple(spec.q, orders)
        except (groups.NoSuchTraces, groups.GenerationUnverified) as exc:
            rep.check("triple search", False, str(exc))
        else:
            rep.add("alpha", list(t.alpha))
            rep.add("beta", list(t.beta))
            rep.add("traces", [t.tau, t.rho])
            rep.add("generation", t.generation)
            rep.check("triple search", True, f"orders {t.orders}")
    return rep


def cmd_ram(args):
    rep = Report(f"ram --p {args.p} --n {args.n} --m {args.m}")
    if (args.lower is None) == (args.upper is None):
        raise UsageError("give exactly one of --lower or --upper")
    try:
        if args.lower is not None:
            f = ram.RamFiltration(args.p, args.n, args.m, _ints(args.lower))
            up = ram.lower_to_upper(f)
        else:
            up = ram.UpperJumps(_rationals(args.upper))
            f = ram.upper_to_lower(args.p, args.n, args.m, up)
    except ram.NotIntegralLowerJumps as exc:
        rep.check("integral lower jumps", False, str(exc))
        return rep
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep.add("lower", _fmt_seq(f.lower_jumps))
    rep.add("upper", _fmt_seq(up.values))
    rep.add("conductor", fmt_rational(ram.conductor(f)))
    d_low = ram.different_degree_lower(f)
    d_up = ram.different_degree_upper(args.p, args.n, args.m, up)
    rep.add("different", d_low)
    rep.check("different agrees (lower vs upper)", d_low == d_up, f"{d_low} vs {d_up}")
    rep.check("round trip", ram.upper_to_lower(args.p, args.n, args.m, up) == f)
    rep.check("conductor weighted form", ram.conductor_weighted(f) == ram.conductor(f))
    rep.check("upper jumps in (1/m)Z", ram.validate_hasse_arf(up, args.m), rule="hasse-arf")
    return rep


def _check_datum(rep, d, label):
    for rule, detail in dd.datum_violations(d):
        rep.check(label, False, detail, rule)
    lhs, rhs = dd.local_raw_terms(d)
    rep.add(f"{label} local identity", f"{fmt_rational(lhs)} vs {fmt_rational(rhs)}")
    try:
        h, w = dd.genus_consistency(d)
        rep.add(f"{label} 2g-2 (hurwitz, differential)", f"({h}, {w})")
        rep.check(f"{label} genus consistency", h == w, f"{h} vs {w}", "local-raw-formula")
    except dd.NonIntegralGenus as exc:
        rep.check(f"{label} genus consistency", False, str(exc), "local-raw-formula")
    rep.check(f"{label} tame denominators", dd.check_denominators(d), rule="tame-denominator")


def cmd_datum(args):
    rep = Report(f"datum check {args.file}")
    doc = _load(args.file)
    try:
        if "vertices" in doc:
            found = [(f"{v['id']}/datum{k}", dd.datum_from_json(x))
                     for v in doc["vertices"] for k, x in enumerate(v.get("data", ()), 1)]
        else:
            found = [("datum", dd.datum_from_json(doc))]
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad datum: {exc}") from exc
    if not found:
        rep.add("data", "none")
    for label, d in found:
        _check_datum(rep, d, label)
    return rep


def _graph(path):
    try:
        return sg.StableGraph.from_json(_load(path))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad graph: {exc}") from exc


def cmd_graph_check(args):
    rep = Report(f"graph check {args.file}" + (f" --alpha {args.alpha}" if args.alpha is not None else ""))
    g = _graph(args.file)
    rep.add("p, n, m", f"{g.p}, {g.n}, {g.m}")
    violations = sg.validate(g)
    for v in violations:
        rep.check(v.element, False, v.detail, v.rule)
    rep.check("structural and local rules", not violations, f"{len(violations)} violation(s)")
    try:
        tails = sg.classify_tails(g)
    except sg.MisplacedBranchPoint:
        return rep
    for t in tails:
        trunc = ", ".join("-" if s is None else fmt_rational(s) for s in t.truncated)
        rep.add(f"tail {t.vertex}", f"{t.flavor}, p^{t.r_prime} on p^{t.r}, sigma^alpha = ({trunc})")
    tv = sg.check_tail_constraints(g)
    for v in tv:
        rep.check(v.element, False, v.detail, v.rule)
    rep.check("tail constraints", not tv, f"{len(tv)} violation(s)")
    try:
        lhs, rhs = sg.global_terms(g)
        rep.check("vanishing cycles", lhs == rhs, f"{fmt_rational(lhs)} vs {fmt_rational(rhs)}",
                  "vanishing-cycles")
    except sg.MissingInvariant as exc:
        rep.check("vanishing cycles", False, str(exc), "vanishing-cycles")
    alphas = [args.alpha] if args.alpha is not None else range(g.n)
    for a in alphas:
        try:
            r = sg.check_generalized(g, a)
        except sg.NoApplicableNodes as exc:
            if args.alpha is not None:
                rep.check(f"generalized formula alpha={a}", False, str(exc), "generalized-vanishing-cycles")
            continue
        except sg.MissingInvariant as exc:
            rep.check(f"generalized formula alpha={a}", False, str(exc), "generalized-vanishing-cycles")
            continue
        detail = (f"{r.verdict}: {fmt_rational(r.lhs)} vs {fmt_rational(r.rhs)}, "
                  f"|I|={r.n_pieces}, root inside={r.root_inside}")
        if r.notes:
            detail += "; " + "; ".join(r.notes)
        rep.check(f"generalized formula alpha={a}", r.verdict != "fails" and not r.notes, detail,
                  "generalized-vanishing-cycles")
    rep.add("monotonic", sg._monotonic_from(g, g.root))
    return rep


def cmd_graph_enumerate(args):
    rep = Report(f"graph enumerate --p {args.p} --n {args.n} --m {args.m} --wild-branch {args.wild_branch}")
    try:
        cfgs = sg.enumerate_tail_configs(args.p, args.n, args.m, args.wild_branch)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep.add("count", len(cfgs))
    for i, c in enumerate(cfgs, 1):
        rep.add(f"config {i}", str(c))
        g = sg.realize_star(args.p, args.n, args.m, c, args.wild_branch)
        bad = sg.validate(g) + sg.check_tail_constraints(g)
        rep.check(f"config {i} realizes", not bad and sg.check_global(g),
                  "; ".join(str(v) for v in bad))
    return rep


def cmd_graph_report(args):
    rep = Report(f"graph report {args.file} --e-abs {args.e_abs}")
    g = _graph(args.file)
    m_G = args.m_G if args.m_G is not None else g.m
    r = sg.monodromy_report(g, _rational(args.e_abs), g.p, g.n, m_G,
                            center_prime_to_p=args.center_prime_to_p,
                            bad_reduction=True if args.bad_reduction else None)
    rep.add("verdict", r.verdict)
    if r.exponent_bound is not None:
        rep.add("exponent bound", r.exponent_bound)
    for k, reason in enumerate(r.reasons, 1):
        rep.add(f"reason {k}", reason)
    rep.check("input consistent", r.verdict != "inconsistent input", rule="monodromy-consistency")
    return rep


def cmd_appendix_a(args):
    rep = Report(f"appendix-a --r {args.r} --prec {args.prec}")
    prec = _rational(args.prec)
    try:
        res = padic.appendix_a(args.r, prec, args.root_choice)
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from exc
    rep.add("g(d)", str(res.g))
    rep.add("delta", str(res.delta))
    rep.check("g(d) is a 5th power", res.fifth_power_g.is_power, res.fifth_power_g.reason)
    rep.check("delta is not a 5th power", not res.fifth_power_delta.is_power,
              res.fifth_power_delta.reason)
    for line in res.fifth_power_delta.summary:
        rep.add("transcript", line)
    if res.twentyfifth_power_g is not None:
        rep.add("g(d) is a 25th power", res.twentyfifth_power_g.is_power)
    if res.twentyfifth_note:
        rep.add("note", res.twentyfifth_note)
    return rep


def cmd_hensel(args):
    rep = Report(f"hensel --p {args.p} --n {args.n}")
    try:
        classes = padic.hensel_qsolve(args.p, args.n)
    except padic.NoSolution as exc:
        rep.check("solutions exist", False, str(exc))
        return rep
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep.add(f"classes mod {args.p}^{args.n}", list(classes))
    if not args.smallest_prime_power:
        return rep
    try:
        q = padic.smallest_prime_power_solution(args.p, args.n, args.limit)
        rep.add("smallest prime power q", q)
        rep.check("prime power solution", (q * q + q + 1) % args.p ** args.n == 0)
    except padic.NoSolution as exc:
        rep.check("prime power solution", False, str(exc))
    return rep


# -- parser ----------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="wildmono", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="machine readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze-group", help="Sylow data of a finite group")
    a.add_argument("spec", help='e.g. "sl2 q=251", "perm (1 2 3); (1 2)", "cyclic 15"')
    a.add_argument("--p", type=int, required=True)
    a.add_argument("--method", choices=("auto", "exhaustive", "structural"), default="auto")
    a.add_argument("--quotient", action="store_true", help="also compute G / O_p'(G)")
    a.add_argument("--triple", help="orders o1,o2,o3 of an SL2 generating triple")
    a.set_defaults(func=cmd_analyze_group)

    r = sub.add_parser("ram", help="ramification jumps, conductor, different")
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--m", type=int, default=1)
    r.add_argument("--lower")
    r.add_argument("--upper")
    r.set_defaults(func=cmd_ram)

    d = sub.add_parser("datum", help="deformation data")
    dsub = d.add_subparsers(dest="action", required=True)
    dc = dsub.add_parser("check")
    dc.add_argument("file")
    dc.set_defaults(func=cmd_datum)

    g = sub.add_parser("graph", help="stable reduction graphs")
    gsub = g.add_subparsers(dest="action", required=True)
    gc = gsub.add_parser("check")
    gc.add_argument("file")
    gc.add_argument("--alpha", type=int)
    gc.set_defaults(func=cmd_graph_check)
    ge = gsub.add_parser("enumerate")
    ge.add_argument("--p", type=int, required=True)
    ge.add_argument("--n", type=int, default=1)
    ge.add_argument("--m", type=int, required=True)
    ge.add_argument("--wild-branch", type=int, default=0)
    ge.set_defaults(func=cmd_graph_enumerate)
    gr = gsub.add_parser("report")
    gr.add_argument("file")
    gr.add_argument("--e-abs", required=True)
    gr.add_argument("--m-G", dest="m_G", type=int)
    gr.add_argument("--center-prime-to-p", action="store_true")
    gr.add_argument("--bad-reduction", action="store_true")
    gr.set_defaults(func=cmd_graph_report)

    x = sub.add_parser("appendix-a", help="the SL2(251) wild monodromy computation")
    x.add_argument("--r", type=int, default=2)
    x.add_argument("--prec", default="3")
    x.add_argument("--root-choice", type=int, choices=(-1, 1), default=-1)
    x.set_defaults(func=cmd_appendix_a)

    h = sub.add_parser("hensel", help="solve q^2+q+1 == 0 mod p^n")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--smallest-prime-power", action="store_true",
                   help="also scan the classes for the least prime power q")
    h.add_argument("--limit", type=int, default=10 ** 7)
    h.set_defaults(func=cmd_hensel)
    return ap


def run(argv=None):
    """Parse argv, run the command; returns (report or None, exit code)."""
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rep = args.func(args)
    except UsageError as exc:
        ap.exit(2, f"wildmono: error: {exc}\n")
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    else:
        print(rep.text())
    return rep, rep.exit_code


def main(argv=None):
    _, code = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
