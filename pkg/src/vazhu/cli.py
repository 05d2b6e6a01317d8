"""Command-line driver.

Exit codes: 0 all checks passed or certified, 1 an exact check failed,
2 usage or configuration error, 3 some memberships were inconclusive.
"""
import argparse
import os
import random
import sys
import time
from fractions import Fraction

from .errors import VazhuError
from .report import EXIT_USAGE, Report, quotient_text, structure_csv
from .voa import Algebra, State, default_conformal, parse_state, serialize, verify_skew_symmetry
from . import changevar as cv
from . import identities as ids
from . import twistzhu as tz

SCHEDULE_ENV = "VAZHU_SCHEDULE"
SUITES = ("identities", "skew", "residue", "bullet-forms", "ideal", "assoc", "unit", "surjection",
          "classic-bracket", "bracket-iso", "conformal-independence", "central-omega")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--config", help="key=value file; command-line flags win")
    p.add_argument("--family", choices=("heis", "vir"))
    p.add_argument("--c", help="Virasoro central charge, e.g. 1/2")
    p.add_argument("--g", choices=("id", "neg1"))
    p.add_argument("--T", type=int)
    p.add_argument("--n", help="k/T, e.g. 3/2 with --T 2")
    p.add_argument("--lam", help="Heisenberg conformal parameter lambda")
    p.add_argument("--W", type=int, help="weight window")
    p.add_argument("--P", help="generator cap schedule, comma separated")
    p.add_argument("--ambient", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--out", help="write the report here as well as stdout")
    p.add_argument("--timings", action="store_true", help="add wall-clock lines (not reproducible)")


DEFAULTS = {"family": "heis", "c": None, "g": "id", "T": 1, "n": "0", "lam": "0", "W": 3,
            "P": None, "ambient": None, "seed": 0, "samples": 20, "out": None, "timings": False,
            "max_s": 10, "lam2": "1/2", "kind": "tilde"}
_INTS = {"T", "W", "ambient", "seed", "samples", "max_s"}


def build_parser():
    p = Parser(prog="vazhu", description="Exact twisted Zhu-type algebra computations.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("identities", help="check the three binomial identities")
    _common(s)
    s.add_argument("--max-s", dest="max_s", type=int)
    s = sub.add_parser("product", help="evaluate one product")
    _common(s)
    s.add_argument("--op", choices=tuple(tz.PRODUCTS), required=True)
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    for name, text in (("ideal-span", "rank of the ideal span"),
                       ("quotient", "quotient approximation and structure constants"),
                       ("export", "structure constants as CSV")):
        s = sub.add_parser(name, help=text)
        _common(s)
        s.add_argument("--kind", choices=(tz.TILDE, tz.CLASSIC))
    s = sub.add_parser("verify", help="run a verification suite")
    _common(s)
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--max-s", dest="max_s", type=int)
    s.add_argument("--lam2", help="second lambda for conformal-independence")
    return p


def read_config(path):
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line without '=': {raw.strip()!r}")
            k, v = (x.strip() for x in line.split("=", 1))
            k = k.replace("-", "_")
            if k not in DEFAULTS:
                raise UsageError(f"unknown config key {k!r}")
            out[k] = int(v) if k in _INTS else v
    return out


def resolve(args):
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for k, v in vars(args).items():
        if k in DEFAULTS and v not in (None, False):
            cfg[k] = v
    return cfg


def schedule_of(cfg):
    text = cfg["P"] or os.environ.get(SCHEDULE_ENV)
    if text:
        try:
            sched = [int(x) for x in str(text).split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"bad schedule {text!r}")
        if not sched or sched != sorted(sched):
            raise UsageError("schedule must be non-empty and increasing")
        return sched
    return None  # each verifier picks W from the weights of its inputs


def algebra_of(cfg):
    c = Fraction(cfg["c"]) if cfg["c"] is not None else None
    return Algebra(cfg["family"], c, cfg["g"], int(cfg["T"]))


def conformal_of(alg, cfg, lam=None):
    lam = Fraction(lam if lam is not None else cfg["lam"])
    if alg.family == "vir":
        return default_conformal(alg)
    return default_conformal(alg, lam)


def config_line(cfg, alg, tw, sched):
    out = {"family": alg.family, "g": alg.automorphism, "T": alg.T, "n": str(tw),
           "W": cfg["W"], "schedule": ",".join(map(str, sched)) if sched else "auto",
           "seed": cfg["seed"]}
    if alg.family == "vir":
        out["c"] = str(alg.central_charge)
    else:
        out["lam"] = str(Fraction(cfg["lam"]))
    return out


# -- suites ----------------------------------------------------------------

def _monos(alg, lo, hi):
    return [m for w in range(lo, hi + 1) for m in alg.basis(w)]


def _st(alg, mono):
    return State(alg, {mono: 1})


def _pairs(alg, total):
    ms = _monos(alg, 0, total)
    return [(a, b) for a in ms for b in ms if sum(a) + sum(b) <= total]


def _triples(alg, W, count, rng, fixed_first=0):
    """Seeded triples of non-vacuum monomials; the first ``fixed_first``
    entries are drawn from the g-fixed part (anything else makes the
    associativity target vanish identically)."""
    ms = _monos(alg, 1, W)
    fixed = [m for m in ms if _fixed(alg, m)] or ms
    return [tuple(rng.choice(fixed if i < fixed_first else ms) for i in range(3))
            for _ in range(count)]


def _fixed(alg, mono):
    return alg.eigen_index(mono) == 0


def suite_records(suite, alg, tw, cfg, sched):
    W = cfg["W"]
    window = sched or tz.default_schedule(W)
    rng = random.Random(cfg["seed"])
    if suite == "identities":
        return ids.check_all(cfg["max_s"])
    if suite == "skew":
        recs = []
        for a, b in _pairs(alg, W):
            u, v = _st(alg, a), _st(alg, b)
            recs.append(verify_skew_symmetry(u, v, cap=W + 2))
            recs.append(tz.verify_skew_mod_ideal(u, v, tw))
        return recs
    if suite == "residue":
        return [tz.verify_residue_in_ideal(_st(alg, a), _st(alg, b), tw, k, m, sched)
                for a, b in _pairs(alg, W) for m in range(3) for k in range(m + 1)]
    if suite == "bullet-forms":
        recs = [tz.verify_odd_in_ideal(_st(alg, a), tw, sched)
                for a in _monos(alg, 1, W) if not _fixed(alg, a)]
        for a, b in _pairs(alg, W):
            if _fixed(alg, a):
                recs.append(tz.verify_bullet_alt_form(_st(alg, a), _st(alg, b), tw, sched))
                if _fixed(alg, b):
                    recs.append(tz.verify_commutator(_st(alg, a), _st(alg, b), tw, sched))
        return recs
    if suite == "ideal":
        recs = []
        for a, b, c in _triples(alg, W, cfg["samples"], rng):
            recs.extend(tz.verify_ideal_property(_st(alg, a), _st(alg, b), _st(alg, c), tw, sched))
        return recs
    if suite == "assoc":
        return [tz.verify_associativity(_st(alg, a), _st(alg, b), _st(alg, c), tw, sched)
                for a, b, c in _triples(alg, W, cfg["samples"], rng, 2)]
    if suite == "unit":
        recs = [tz.verify_unit(_st(alg, v), tw) for v in _monos(alg, 0, W)]
        for a in _monos(alg, 1, W):
            if not _fixed(alg, a):
                for b in _monos(alg, 0, W - sum(a)):
                    got = tz.bullet_vec(alg, {a: Fraction(1)}, {b: Fraction(1)}, tw)
                    recs.append(tz.Verdict("bullet_vanishes", "fail" if got else "pass",
                                           {"u": serialize(_st(alg, a)), "v": serialize(_st(alg, b))}))
        return recs
    if suite == "surjection":
        samples = [(_st(alg, a), _st(alg, b)) for a, b in _pairs(alg, W)]
        return tz.verify_surjection(alg, tw, samples, P=W, schedule=window)
    if suite == "classic-bracket":
        ctx = cv.BracketContext(conformal_of(alg, cfg))
        ms = _monos(alg, 0, W)
        return [cv.verify_classic_vs_bracket(_st(alg, a), _st(alg, b), tw, ctx) for a in ms for b in ms]
    if suite == "bracket-iso":
        ctx = cv.BracketContext(conformal_of(alg, cfg))
        samples = [(_st(alg, a), _st(alg, b)) for a, b in _pairs(alg, W)]
        return cv.verify_bracket_iso(samples, tw, ctx)
    if suite == "conformal-independence":
        ctx = cv.BracketContext(conformal_of(alg, cfg))
        ctx2 = cv.BracketContext(conformal_of(alg, cfg, cfg["lam2"]))
        return cv.verify_conformal_independence(ctx, ctx2, tw, W, window)
    if suite == "central-omega":
        omega = conformal_of(alg, cfg)
        q = tz.quotient_algebra(alg, tw, tz.CLASSIC, W, window[-1], omega=omega, ambient=cfg["ambient"])
        return [tz.Verdict("central_omega", "certificate" if ok else "inconclusive",
                           {"rep": "[" + ",".join(map(str, q.reps[j])) + "]"}, level=q.P)
                for j, ok in sorted(q.centrality.items())]
    raise UsageError(f"unknown suite {suite!r}")


# -- entry point -------------------------------------------------------------

def _emit(text, cfg):
    sys.stdout.write(text)
    if cfg.get("out"):
        with open(cfg["out"], "w") as fh:
            fh.write(text)


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve(args)
        alg = algebra_of(cfg)
        tw = tz.TwistParams.parse(cfg["n"], alg.T)
        sched = schedule_of(cfg)
        cmd = args.command
        if cmd == "product":
            cap = None if cfg["ambient"] is None else cfg["ambient"]
            u = parse_state(args.u, alg)
            v = parse_state(args.v, alg)
            big = cap if cap is not None else u.top_weight + v.top_weight + 2 * tw.h_max()
            u, v = u.with_cap(big), v.with_cap(big)
            fn = tz.PRODUCTS[args.op]
            if args.op in ("circ", "star"):
                out = fn(u, v, tw, conformal_of(alg, cfg))
            else:
                out = fn(u, v, tw)
            _emit(serialize(out, with_family=False) + "\n", cfg)
            return 0
        if cmd == "ideal-span":
            kind = cfg["kind"]
            omega = conformal_of(alg, cfg) if kind == tz.CLASSIC else None
            lines = []
            for P in sched or tz.default_schedule(cfg["W"]):
                ideal = tz.ideal_span(alg, tw, kind, P, cfg["ambient"], omega)
                lines.append(f"ideal kind={kind} n={tw} P={P} ambient={ideal.ambient_cap} "
                             f"generators={len(ideal.span.generators)} rank={ideal.span.rank}")
            _emit("\n".join(lines) + "\n", cfg)
            return 0
        if cmd in ("quotient", "export"):
            kind = cfg["kind"]
            omega = conformal_of(alg, cfg) if kind == tz.CLASSIC else None
            q = tz.quotient_algebra(alg, tw, kind, cfg["W"], (sched or tz.default_schedule(cfg["W"]))[-1],
                                  omega, cfg["ambient"])
            _emit(quotient_text(q) if cmd == "quotient" else structure_csv(q), cfg)
            return 0
        report = Report(config_line(cfg, alg, tw, sched))
        if cmd == "identities":
            suite = "identities"
        else:
            suite = args.suite
        t0 = time.perf_counter()
        recs = suite_records(suite, alg, tw, cfg, sched)
        report.add(suite, recs, time.perf_counter() - t0)
        _emit(report.render(timings=cfg["timings"]), cfg)
        return report.exit_code()
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (VazhuError, ValueError, ZeroDivisionError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
