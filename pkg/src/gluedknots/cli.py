"""Command-line front end."""

from __future__ import annotations

import argparse
import sys

from . import harness
from .config import config_from_text, config_to_text, random_config, smooth, summarize
from .errors import GluedKnotError, MaxRetriesExceeded, NonGenericProjection
from .families import FAMILIES, generate
from .geom3 import Tolerances
from .invariants import alexander, conway, jones, tricolorings
from .knot_table import identify
from .project import project_with_retries, render_svg
from .skein import check_bracket_expansion, check_conway_expansion


def _tol(args) -> Tolerances:
    return Tolerances(eps=args.epsilon)


def _load(path: str, tol: Tolerances):
    with open(path) as f:
        return config_from_text(f.read(), tol)


def cmd_validate(args) -> int:
    cfg = _load(args.file, _tol(args))
    print(summarize(cfg, _tol(args)).to_text())
    return 0


def cmd_diagram(args) -> int:
    tol = _tol(args)
    cfg = _load(args.file, tol)
    d, spec = project_with_retries(smooth(cfg), seed=args.seed, tol=tol)
    print(f"# direction {spec.direction[0]:.6f} {spec.direction[1]:.6f} {spec.direction[2]:.6f}")
    print(f"crossings {d.crossing_count()}")
    print(f"writhe {d.writhe()}")
    print("pd " + d.pd_code())
    print("gauss " + d.gauss_code())
    return 0


def cmd_invariants(args) -> int:
    tol = _tol(args)
    cfg = _load(args.file, tol)
    d, _ = project_with_retries(smooth(cfg), seed=args.seed, tol=tol)
    print(f"tricolorings {tricolorings(d)}")
    print("jones " + jones(d).to_text())
    print("conway " + conway(d).to_text())
    if d.component_count() == 1:
        print("alexander " + alexander(d).to_text())
    print(f"identify {identify(d)}")
    print(f"writhe {d.writhe()}")
    return 0


def cmd_family(args) -> int:
    cfg = generate(args.name, args.param, _tol(args))
    text = config_to_text(cfg)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
        print(f"wrote {args.out} ({cfg.m} ellipses)")
    else:
        sys.stdout.write(text)
    return 0


def cmd_sample(args) -> int:
    tol = _tol(args)
    for i in range(args.count):
        cfg = random_config(args.m, seed=args.seed * 1_000_003 + i, tol=tol)
        if args.count > 1:
            print(f"# sample {i}")
        sys.stdout.write(config_to_text(cfg))
    return 0


def cmd_skein_check(args) -> int:
    tol = _tol(args)
    cfg = _load(args.file, tol)
    rep = check_conway_expansion(cfg, tol=tol)
    print(rep.to_text())
    rep2 = check_bracket_expansion(cfg, tol=tol)
    print(rep2.to_text())
    return 0 if rep.failed == 0 and rep2.failed == 0 else 1


def cmd_verify(args) -> int:
    tol = _tol(args)
    sizes = None
    if args.samples:
        sizes = {k: args.samples for k in harness.DEFAULT_SAMPLES}
    if args.suite:
        table = {
            "writhe": lambda: [harness.SuiteRun(f"writhe-bound-m{m}",
                               harness.verify_writhe_bound(m, args.samples or 200, args.seed, tol))
                               for m in (2, 3, 4)],
            "parity": lambda: [harness.SuiteRun(f"parity-m{m}",
                               harness.verify_parity(m, args.samples or 200, args.seed, tol))
                               for m in (2, 3, 4)],
            "classification": lambda: [harness.SuiteRun(f"classification-m{m}",
                                       harness.verify_classification(m, args.samples or 500,
                                                                     args.seed, tol))
                                       for m in (2, 3)],
            "nonalternating": lambda: [harness.SuiteRun(
                "nonalternating-projection",
                harness.verify_nonalternating_projection(args.samples or 40, args.seed, tol))],
        }
        if args.suite not in table:
            print(f"unknown suite {args.suite!r}", file=sys.stderr)
            return 1
        runs = table[args.suite]()
        harness.persist(runs, args.out)
    else:
        runs = harness.run_all(args.seed, args.out, sizes, tol)
    for run in runs:
        r = run.report
        print(f"{r.status} {run.name}: {r.passed}/{r.samples} passed, "
              f"{r.failed} failed, {r.vacuous} vacuous")
    return harness.exit_code(runs)


def cmd_render(args) -> int:
    tol = _tol(args)
    cfg = _load(args.file, tol)
    d, spec = project_with_retries(smooth(cfg), seed=args.seed, tol=tol)
    svg = render_svg(smooth(cfg), spec, tol)
    with open(args.out, "w") as f:
        f.write(svg)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gluedknots",
                                 description="Knots glued from ellipses: diagrams, "
                                             "invariants, and verification suites.")
    ap.add_argument("--epsilon", type=float, default=1e-9,
                    help="geometric tolerance (default 1e-9)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a configuration file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("diagram", help="print PD/Gauss codes and writhe")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("invariants", help="print classical invariants")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("family", help="emit a named family configuration")
    p.add_argument("name", choices=FAMILIES)
    p.add_argument("param", type=int)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sample", help="emit random configurations")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("skein-check", help="verify the skein expansion identities")
    p.add_argument("file")
    p.set_defaults(func=cmd_skein_check)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default=None,
                   help="writhe | parity | classification | nonalternating")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--out", default="results")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="emit an SVG diagram")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (MaxRetriesExceeded, NonGenericProjection) as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 2
    except GluedKnotError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
