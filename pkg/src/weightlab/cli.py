"""weightlab command line: single computations and the verification matrix."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis as an
from .exact_arith import Q, fmt
from .lie_core import SL3_CONVENTIONS, AlgebraMismatch, parse_element, sl3_homomorphism_failures
from .localization import LOC_ISOS, additivity_check, loc_iso_check
from .roots import PARABOLICS, ROMAN, axiom_violations, enumerate_parabolics, parabolic, w_roots
from .weight_modules import (
    FORMULAS, TensorModule, TensorModuleSpec, WeightWindow, char_series_expand, character,
    degree_on, parse_vector, spec, weight, wfmt,
)


def _fraction(text: str) -> Fraction:
    return Q(text.strip())


def _pair(text: str) -> tuple:
    return tuple(_fraction(t) for t in text.split(","))


def _spec_json(text: str) -> dict:
    """A path to a JSON file, or the JSON itself."""
    if text.lstrip().startswith("{"):
        return json.loads(text)
    return json.loads(Path(text).read_text())


def load_spec(text: str) -> TensorModuleSpec:
    return TensorModuleSpec.from_json(_spec_json(text))


def spec_window(text: str) -> WeightWindow | None:
    """The optional {lo, hi, margin} window stored next to a spec."""
    w = _spec_json(text).get("window")
    if not w:
        return None
    return WeightWindow(weight(w["lo"]), weight(w["hi"]), int(w.get("margin", 0)))


def random_rational(rng: random.Random, lo: int = -12, hi: int = 12, max_den: int = 7, integral: bool = False) -> Fraction:
    """A rational with denominator <= max_den; non-integral unless asked otherwise."""
    if integral:
        return Fraction(rng.randint(lo, hi))
    while True:
        q = Fraction(rng.randint(lo * max_den, hi * max_den), rng.randint(2, max_den))
        if q.denominator != 1:
            return q


def default_window(sp: TensorModuleSpec, radius: int = 6, margin: int = 2) -> WeightWindow:
    return WeightWindow.around(sp.nu, radius, margin)


# verification suites; each returns a list of reports


def suite_characters(rng, samples: int) -> list:
    out = []
    lams = [(0, 0), (1, 0), (2, 0), (3, 1), (7, 4)]
    for lam in lams:
        W = WeightWindow.around(lam, 7, 0)
        for J in FORMULAS:
            got = character(spec("W2", lam, lam, J), W)
            want = char_series_expand(J, {"lambda": lam}, W)
            deg = max(got.values())
            ok = got == want and deg == lam[0] - lam[1] + 1
            out.append(an.report(
                f"character of T({wfmt(lam)}, {wfmt(lam)}, ({J})) equals the closed form",
                "character formulas of highest weight tensor modules",
                {"lambda": an.wjson(lam), "J": J, "window": W.to_json()},
                "pass" if ok else "fail",
                {"weights": len(got), "degree": deg, "mismatches": len(set(got.items()) ^ set(want.items()))},
            ))
    nu = (Fraction(1, 2), 0)
    W = WeightWindow.around(nu, 7, 0)
    got = character(spec("W2", nu, (2, 0), "2-"), W)
    want = char_series_expand("2-", {"lambda": (2, 0), "nu": nu}, W)
    out.append(an.report(
        "character of the half-plane module T(nu, lambda, 2-) equals its closed form",
        "half-plane character formula",
        {"nu": an.wjson(nu), "lambda": ["2", "0"]},
        "pass" if got == want else "fail",
        {"weights": len(got)},
    ))
    return out


def suite_parabolics(rng, samples: int) -> list:
    out = []
    radius = 8
    sets = enumerate_parabolics()
    out.append(an.report("there are twelve parabolic sets P(J)", "parabolic subsets of W2 roots", {},
                         "pass" if len(sets) == 12 else "fail", {"names": [n for n, _ in sets]}))
    for k, (name, p) in enumerate(sets):
        bad = axiom_violations(p, radius)
        out.append(an.report(f"({ROMAN[k]}) {name} is closed with a symmetric Levi part and an ideal nilradical",
                             "parabolic subsets of W2 roots", {"radius": radius},
                             "fail" if bad else "pass", {"violations": [str(b) for b in bad[:5]]}))
    p1 = parabolic("1+")
    box = [(a, b) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1)]
    wrong = [d for d in box if p1.cone_contains(d) != (d[0] <= 0)]
    out.append(an.report("P(1+) = Z_{<=0} eps1 + Z eps2", "remark on P(1+)", {"radius": radius},
                         "fail" if wrong else "pass", {"wrong": wrong[:5]}))
    roots = set(w_roots(radius))
    expected = {
        "1+": ({a for a in roots if a[0] == 0}, {a for a in roots if a[0] == -1}),
        "2+": ({a for a in roots if a[1] == 0}, {a for a in roots if a[1] == -1}),
        "12+": ({(1, -1), (-1, 1)}, {(-1, 0), (0, -1)}),
    }
    for tag, (levi, nil) in expected.items():
        p = parabolic(tag)
        ok = p.levi_roots(radius) == levi and p.nilrad_roots(radius) == nil
        out.append(an.report(f"Levi and nilradical roots of p({tag})", "Levi components of half-plane parabolics",
                             {"radius": radius}, "pass" if ok else "fail",
                             {"levi": sorted(p.levi_roots(radius))[:6], "nilradical": sorted(p.nilrad_roots(radius))[:6]}))
    return out


def suite_charpoly(rng, samples: int) -> list:
    out = []
    for n in range(7):
        pts = []
        for _ in range(samples):
            l2 = random_rational(rng, -4, 4)
            s = (random_rational(rng), random_rational(rng))
            pts.append((s, (l2 + n, l2)))
        for l2 in (0, 1):
            pts.append(((random_rational(rng), random_rational(rng)), (l2 + n, l2)))
        r = an.charpoly_identity_check(n, pts)
        out += [r["identity"], r["conventions"]]
    return out


def suite_wp(rng, samples: int) -> list:
    out = []
    for case in ("i", "ii", "iii"):
        for _ in range(max(1, min(samples, 3))):
            l2 = rng.randint(-2, 2)
            lam = (l2 + rng.randint(0, 2), l2)
            if case == "i":
                nu = (random_rational(rng, -3, 3), Fraction(rng.randint(-2, 2)))
            elif case == "ii":
                nu = (Fraction(rng.randint(-2, 2)), random_rational(rng, -3, 3))
            else:
                nu = (Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)))
            W = WeightWindow.around(nu, 6, 0)
            out.append(an.wp_strip_check(case, nu, lam, W))
    return out


def _generic_triples(rng, count: int) -> list:
    return [(random_rational(rng, -3, 3), random_rational(rng, -3, 3), random_rational(rng, -2, 2)) for _ in range(count)]


def suite_loc_iso(rng, samples: int) -> list:
    out = []
    cases = []
    for lam, nu, c in _generic_triples(rng, 3):
        cases.append(("A1_I1_plus", {"lambda": lam, "c": c, "nu": nu}, lam + nu))
    cases.append(("A1_Dm1_minus", {"lambda": 1, "c": 0, "nu": Fraction(1, 2)}, Fraction(3, 2)))
    for lam, nu, c in _generic_triples(rng, 2):
        cases.append(("A1_Dm1_minus", {"lambda": lam, "c": c, "nu": nu}, lam + nu))
    lam, nu, c = _generic_triples(rng, 1)[0]
    eta = random_rational(rng, -3, 3)
    cases.append(("A1_Dm1_shift", {"lambda": lam, "c": c, "nu": nu, "eta": eta}, lam + eta))
    for iso_id, params, center in cases:
        r = loc_iso_check(iso_id, params, WeightWindow.around((center,), 7, 3))
        out.append(an.report(f"{iso_id} intertwines", "explicit localization isomorphisms", r["params"],
                             "fail" if r["violations"] else "pass", r))
    base = TensorModule(spec("A1", lam, lam, "-", c))
    from .lie_core import D
    from .localization import LocalizedModule
    flat = LocalizedModule(base, D(-1), -eta)
    r = additivity_check(base, D(-1), nu - eta, -nu, WeightWindow.around(flat.coset, 7, 3))
    out.append(an.report("twists add: D^(nu-eta) D^(-nu) = D^(-eta)", "additivity of twisted localization",
                         {"lambda": fmt(lam), "c": fmt(c), "nu": fmt(nu), "eta": fmt(eta)},
                         "fail" if r["violations"] else "pass", r))
    s = (random_rational(rng, -2, 2), random_rational(rng, -2, 2))
    while (s[0] + s[1]).denominator == 1:
        s = (s[0], random_rational(rng, -2, 2))
    mixed = (s[0], Fraction(rng.randint(-2, 2)) - s[0])
    for iso_id, sv, lam in (("W2_reverse_2minus", s, (2, 0)), ("W2_reverse_1plus", s, (2, 0)), ("W2_reverse_mixed", mixed, (2, 1))):
        r = loc_iso_check(iso_id, {"s": sv, "lambda": lam}, WeightWindow.around(sv, 7, 2))
        out.append(an.report(f"{iso_id} intertwines", "reverse localization", r["params"],
                             "fail" if r["violations"] else "pass", r))
    return out


def suite_closure(rng, samples: int) -> list:
    out = []
    for sp, stated in an.STATED_STRUCTURE:
        out.append(an.composition_check(sp, stated, WeightWindow.around((0,) * sp.rank, 6, 2)))
    generic = [
        spec("W2", (random_rational(rng, -2, 2), random_rational(rng, -2, 2)), (2, 0)),
        spec("W2", (3, 1), (3, 1), "1+,2+"),
        spec("W2", (2, 0), (2, 0), "1+,2-"),
        spec("W2", (random_rational(rng, -2, 2), 1), (2, 0), "2-"),
        spec("W1", random_rational(rng, -2, 2), 2),
    ]
    for sp in generic:
        W = WeightWindow.around(sp.nu, 6, 2)
        out.append(an.simplicity_check(sp, W, an.central_seeds(sp, W, 2)))
    return out


def suite_bounds(rng, samples: int) -> list:
    out = []
    checks = [
        (an.hw_bounded_check((3, 1), "2+,12+"), True, "hw (3,1) p(2+,12+)"),
        (an.hw_bounded_check((Fraction(1, 2), 0), "2+,12+"), False, "hw (1/2,0) p(2+,12+)"),
        (an.hw_bounded_check((0, 1), "1-,2+"), True, "hw (0,1) p(1-,2+)"),
        (an.half_plane_bounded_check(Fraction(1, 2), 2, 0, "1+"), True, "half-plane (1/2,2,0) 1+"),
        (an.half_plane_bounded_check(Fraction(1, 2), 0, 1, "1-"), True, "half-plane (1/2,0,1) 1-"),
        (an.half_plane_bounded_check(Fraction(1, 2), Fraction(1, 3), 0, "1+"), False, "half-plane (1/2,1/3,0) 1+"),
        (an.sl3_bounded_weight_check((0, 3, 1), an.sl3_borel("standard")), True, "sl3 dominant integral"),
        (an.sl3_bounded_weight_check((Fraction(1, 3), Fraction(1, 2), Fraction(1, 2)), an.sl3_borel("opposite")), True, "sl3 type 1"),
        (an.sl3_bounded_weight_check((Fraction(1, 7), Fraction(2, 5), Fraction(-3, 11)), an.sl3_borel("standard")), False, "sl3 generic"),
    ]
    for got, want, name in checks:
        out.append(an.report(f"boundedness predicate: {name}", "bounded highest weight conditions", {},
                             "pass" if got == want else "fail", {"value": got, "expected": want}))
    for lam in ((0, 0), (2, 0), (3, 1)):
        for J in FORMULAS:
            deg = degree_on(spec("W2", lam, lam, J), WeightWindow.around(lam, 5, 0))
            out.append(an.report(f"T({wfmt(lam)}, {wfmt(lam)}, ({J})) has degree lambda1 - lambda2 + 1",
                                 "degrees of highest weight tensor modules", {}, "pass" if deg == lam[0] - lam[1] + 1 else "fail",
                                 {"degree": deg}))
    return out


def suite_nplus(rng, samples: int) -> list:
    return [an.nplus_check(2, 0, Fraction(1, 2), WeightWindow.around((0, Fraction(1, 2)), 8, 3))]


def suite_sl3(rng, samples: int) -> list:
    out = []
    for conv in SL3_CONVENTIONS:
        fails = sl3_homomorphism_failures(conv)
        status = ("fail" if fails else "pass") if conv != "literal" else "info"
        out.append(an.report(f"sl3 -> W2 ({conv} convention) preserves {64 - len(fails)}/64 brackets", "sl3 inside W2",
                             {"convention": conv, "pairs": 64}, status,
                             {"failures": len(fails), "first": [list(f) for f in fails[:3]]}))
    return out


SUITES = {
    "characters": suite_characters,
    "parabolics": suite_parabolics,
    "charpoly": suite_charpoly,
    "wp": suite_wp,
    "loc-iso": suite_loc_iso,
    "closure": suite_closure,
    "bounds": suite_bounds,
    "nplus": suite_nplus,
    "sl3": suite_sl3,
}
ALL_ORDER = ["sl3", "characters", "parabolics", "charpoly", "wp", "loc-iso", "closure", "nplus", "bounds"]


def run_suite(name: str, seed: int, samples: int) -> list:
    rng = random.Random(seed)
    names = ALL_ORDER if name == "all" else [name]
    out = []
    for n in names:
        for r in SUITES[n](rng, samples):
            r = dict(r)
            r["suite"] = n
            out.append(r)
    return out


# output


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else wfmt(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        items = [_jsonable(x) for x in obj]
        return sorted(items, key=str) if isinstance(obj, set) else items
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def emit(payload, args) -> None:
    if args.format == "table":
        text = render_table(payload)
    else:
        text = json.dumps(_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def render_table(payload) -> str:
    if isinstance(payload, dict) and "reports" in payload:
        lines = [f"{r['status']:<5} {r['suite']:<11} {r['claim']}" for r in payload["reports"]]
        lines.append(f"summary: {payload['summary']}")
        return "\n".join(lines)
    if isinstance(payload, dict) and "character" in payload:
        return payload["diagram"]
    return json.dumps(_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False)


def diagram(char: dict, window: WeightWindow) -> str:
    """ASCII weight diagram: rows are s2 (top = largest), columns s1."""
    if len(window.lo) == 1:
        return " ".join(str(char.get((window.lo[0] + k,), ".")) for k in range(int(window.hi[0] - window.lo[0]) + 1))
    rows = []
    w1 = [window.lo[0] + k for k in range(int(window.hi[0] - window.lo[0]) + 1)]
    for k in range(int(window.hi[1] - window.lo[1]), -1, -1):
        s2 = window.lo[1] + k
        rows.append(f"{fmt(s2):>6} | " + " ".join(str(char.get((s1, s2), ".")) for s1 in w1))
    return "\n".join(rows)


# commands


def cmd_act(args) -> int:
    sp = load_spec(args.spec)
    u = parse_element(args.element, sp.algebra)
    v = parse_vector(args.vector)
    mod = TensorModule(sp)
    img = mod.act(u, v)
    emit({"text": str(img), "vector": img.to_json(), "spec": sp.to_json()}, args)
    return 0


def _window(args, sp) -> WeightWindow:
    if args.window:
        return WeightWindow.parse(args.window)
    return spec_window(args.spec) or default_window(sp)


def cmd_character(args) -> int:
    sp = load_spec(args.spec)
    W = _window(args, sp)
    ch = character(sp, W)
    emit({"character": [{"weight": an.wjson(w), "mult": k} for w, k in sorted(ch.items())], "degree": max(ch.values(), default=0),
          "diagram": diagram(ch, W), "spec": sp.to_json()}, args)
    return 0


def cmd_support(args) -> int:
    sp = load_spec(args.spec)
    W = _window(args, sp)
    shape = an.support_shape(sp, W)
    emit({"shape": shape, "spec": sp.to_json(), "window": W.to_json()}, args)
    return 0


def cmd_wp(args) -> int:
    nu, lam = _pair(args.nu), _pair(args.lam)
    W = WeightWindow.parse(args.window) if args.window else WeightWindow.around(nu, 6, 0)
    r = an.wp_strip_check(args.case, nu, lam, W)
    emit(r, args)
    return 0 if r["status"] == "pass" else 1


def cmd_charpoly(args) -> int:
    rng = random.Random(args.seed)
    reports = suite_charpoly(rng, args.samples) if args.n is None else _charpoly_one(args.n, rng, args.samples)
    emit({"reports": [dict(r, suite="charpoly") for r in reports], "summary": _summary(reports)}, args)
    return 0 if all(r["status"] != "fail" for r in reports) else 1


def _charpoly_one(n: int, rng, samples: int) -> list:
    pts = []
    for _ in range(samples):
        l2 = random_rational(rng, -4, 4)
        pts.append(((random_rational(rng), random_rational(rng)), (l2 + n, l2)))
    r = an.charpoly_identity_check(n, pts)
    return [r["identity"], r["conventions"]]


def cmd_loc_iso(args) -> int:
    params = json.loads(args.params)
    if args.window:
        W = WeightWindow.parse(args.window)
    elif args.iso_id.startswith("A1"):
        center = Q(params["lambda"]) + Q(params.get("eta", params["nu"]))
        W = WeightWindow.around((center,), 7, 3)
    else:
        W = WeightWindow.around(_pair(",".join(map(str, params["s"]))), 5, 2)
    r = loc_iso_check(args.iso_id, params, W)
    emit(r, args)
    return 1 if r["violations"] else 0


def cmd_closure(args) -> int:
    sp = load_spec(args.spec)
    W = _window(args, sp)
    pos, _, idx = args.seed_vector.partition(":")
    prof = an.closure_profile(sp, (_pair(pos), int(idx or 0)), W)
    full = character(sp, W.shrink(W.margin))
    emit({"closure": {wfmt(w): k for w, k in sorted(prof.items())}, "fills_interior": prof == full,
          "spec": sp.to_json()}, args)
    return 0


def cmd_parabolics(args) -> int:
    reports = suite_parabolics(random.Random(0), 0)
    listing = [{"tag": t, "name": n, "item": ROMAN[k], "J": [[fmt(Q(x)) for x in v] for v in vecs]}
               for k, (t, n, vecs) in enumerate(PARABOLICS)]
    emit({"parabolics": listing, "reports": [dict(r, suite="parabolics") for r in reports], "summary": _summary(reports)}, args)
    return 0 if all(r["status"] != "fail" for r in reports) else 1


def cmd_bounds(args) -> int:
    reports = suite_bounds(random.Random(args.seed), args.samples)
    emit({"reports": [dict(r, suite="bounds") for r in reports], "summary": _summary(reports)}, args)
    return 0 if all(r["status"] != "fail" for r in reports) else 1


def _summary(reports: list) -> dict:
    out = {"pass": 0, "fail": 0, "info": 0}
    for r in reports:
        out[r["status"]] += 1
    return out


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.seed, args.samples)
    failing = [r["claim"] for r in reports if r["status"] == "fail"]
    emit({"reports": reports, "summary": _summary(reports), "failing": failing, "seed": args.seed}, args)
    return 1 if failing else 0


def build_parser() -> argparse.ArgumentParser:
    env_seed = os.environ.get("WEIGHTLAB_SEED")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", help='"lo1,lo2:hi1,hi2:margin"')
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--seed", type=int, default=int(env_seed) if env_seed else 0)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "table"), default="json")

    p = argparse.ArgumentParser(prog="weightlab", description="Exact computations with bounded W2 tensor modules.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("act", parents=[common], help="apply a Lie element to a module vector")
    a.add_argument("--spec", required=True)
    a.add_argument("element")
    a.add_argument("vector")
    a.set_defaults(func=cmd_act)

    for name, fn, hlp in (("character", cmd_character, "weight multiplicities on a window"),
                          ("support", cmd_support, "classify the support shape")):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.add_argument("--spec", required=True)
        c.set_defaults(func=fn)

    w = sub.add_parser("wp", parents=[common], help="primitive weights of x2d1 on a localized module")
    w.add_argument("--case", choices=("i", "ii", "iii"), required=True)
    w.add_argument("--nu", required=True)
    w.add_argument("--lambda", dest="lam", required=True)
    w.set_defaults(func=cmd_wp)

    cp = sub.add_parser("charpoly-check", parents=[common], help="spectrum of (x1d2)(x2d1) on T^s")
    cp.add_argument("--n", type=int)
    cp.set_defaults(func=cmd_charpoly)

    li = sub.add_parser("loc-iso", parents=[common], help="check an explicit localization isomorphism")
    li.add_argument("iso_id", choices=LOC_ISOS)
    li.add_argument("--params", required=True, help='JSON, e.g. {"lambda": "1/3", "c": 1, "nu": "1/2"}')
    li.set_defaults(func=cmd_loc_iso)

    cl = sub.add_parser("closure", parents=[common], help="closure of a basis vector")
    cl.add_argument("--spec", required=True)
    cl.add_argument("--seed-vector", required=True, help='"s1,s2:i"')
    cl.set_defaults(func=cmd_closure)

    pa = sub.add_parser("parabolics", parents=[common], help="the twelve parabolic sets")
    pa.set_defaults(func=cmd_parabolics)

    bo = sub.add_parser("bounds", parents=[common], help="boundedness predicates")
    bo.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=["all"] + ALL_ORDER)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AlgebraMismatch, ValueError, KeyError, ArithmeticError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
