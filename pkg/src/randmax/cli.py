"""Command-line front end.

One subcommand per verification experiment keeps the check-to-code map
auditable.  Every run is deterministic given its flags and seed; Monte
Carlo work is split over counter-based substreams so the output is
byte-identical for any ``--threads`` value.  Results are written as CSV
(one file per table, floats at 17 significant digits) plus a plain-text
summary, and the exit code is 0 only if every pass flag is true.
"""

import os
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, DomainError, RandmaxError
from .evd_core import (
    COMPLETE_DEPENDENCE,
    INDEPENDENCE,
    Frechet,
    Gumbel,
    MaxStableLaw,
    ReverseWeibull,
    standard_triple,
)
from .extremal_proc import sample_Y_at_time, simulate_paths
from .lt_families import CountScheme, Degenerate, Geometric, MittagLeffler
from .nmid_compose import sample_random_max_seeded
from .streams import chunked_draws
from .verify_harness import (
    Table,
    run_definetti,
    run_doa_table,
    run_lemma12,
    run_poincare,
    run_thm24,
    run_thm31,
    run_thm32,
    run_thm34,
)

import argparse

EXPERIMENT_GUIDE = """\
experiments:
  verify poincare    composition identity P_theta(phi(theta s)) = phi(s) (Poincare equation)
  verify lemma12     scaled counts theta*N_theta converge to the mixer U (Lemma 1.2)
  verify definetti   phi(n(1 - G(a_n x + b_n))) converges to phi(-log H) (Theorems 1.1/2.2)
  verify thm24       paired tables G^n -> H against P_{1/n}(G) -> phi(-log H) (Theorem 2.4)
  verify thm31       same-type decomposition F = P_theta(F_theta) (Theorem 3.1)
  verify thm32       subordination F(x) = P(Y(Z) <= x) by exact sampling (Theorem 3.2 iv)
  verify thm34       random domain of max-attraction, analytic + sampled (Theorem 3.4)
  sample randmax     draws of the random maximum max of N_theta base draws
  sample mixer       draws of the mixer U (Laplace transform phi)
  sample count       draws of the count N_theta
  sample extremal-marginal   exact draws of Y(t)
  extremal path      jump-chain trajectories of the extremal process
  table doa          domain-of-attraction gap table along n
"""

DEFAULT_SEED_ENV = "RANDMAX_SEED"


def _parse_int_list(text):
    try:
        return tuple(int(tok) for tok in text.split(",") if tok)
    except ValueError:
        raise ConfigurationError(f"expected a comma-separated integer list, got {text!r}")


def _parse_float_list(text):
    try:
        return tuple(float(tok) for tok in text.split(",") if tok)
    except ValueError:
        raise ConfigurationError(f"expected a comma-separated number list, got {text!r}")


def make_family(args):
    kind = args.family.lower()
    if kind == "geometric":
        return Geometric()
    if kind in ("mittag-leffler", "mittagleffler", "ml"):
        if args.nu is None:
            raise ConfigurationError("the Mittag-Leffler family requires --nu in (0, 1)")
        return MittagLeffler(args.nu)
    if kind == "degenerate":
        return Degenerate()
    raise ConfigurationError(
        f"unknown family {args.family!r}; expected geometric, mittag-leffler, or degenerate"
    )


def parse_marginal(spec):
    kind, _, param = spec.lower().partition(":")
    if kind == "frechet":
        return Frechet(float(param) if param else 1.0)
    if kind == "gumbel":
        return Gumbel()
    if kind in ("reverse-weibull", "weibull"):
        return ReverseWeibull(float(param) if param else 1.0)
    raise ConfigurationError(
        f"unknown marginal {spec!r}; expected frechet:a, gumbel, or reverse-weibull:a"
    )


def make_law(args):
    marginal = parse_marginal(args.marginal)
    dependence = getattr(args, "dependence", "none") or "none"
    if dependence == "none":
        return MaxStableLaw((marginal,))
    if dependence not in (INDEPENDENCE, COMPLETE_DEPENDENCE):
        raise ConfigurationError(
            f"unknown dependence {dependence!r}; expected independence or complete"
        )
    return MaxStableLaw((marginal, marginal), dependence=dependence)


def parse_base(spec):
    kind, _, param = spec.lower().partition(":")
    alpha = float(param) if param else 1.0
    return standard_triple(kind, alpha)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="randmax",
        description="Random max-stable laws: verification experiments and samplers.",
        epilog=EXPERIMENT_GUIDE,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None,
                       help=f"64-bit seed (default: ${DEFAULT_SEED_ENV} or 0)")
        p.add_argument("--out", default=".", help="output directory (default: .)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads; output is identical for any value")
        p.add_argument("--config", default=None,
                       help="flat key=value file mirroring the long flags")

    def family_opts(p):
        p.add_argument("--family", default="geometric",
                       help="geometric | mittag-leffler | degenerate")
        p.add_argument("--nu", type=float, default=None,
                       help="Mittag-Leffler order in (0, 1)")

    verify = subparsers.add_parser("verify", help="run a verification experiment").add_subparsers(
        dest="experiment", required=True
    )

    p = verify.add_parser("poincare", help="composition identity residuals")
    family_opts(p)
    p.add_argument("--thetas", default="0.5,0.1,0.01")
    p.add_argument("--s-grid", default="0.01,0.1,0.5,1,2,5,10")
    common(p)

    p = verify.add_parser("lemma12", help="scaled count convergence to the mixer")
    family_opts(p)
    p.add_argument("--theta", type=float, default=0.001)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--threshold", type=float, default=0.01)
    common(p)

    p = verify.add_parser("definetti", help="de Finetti style limit table")
    family_opts(p)
    p.add_argument("--triple", default="pareto:1", help="pareto:a | exponential | uniform")
    p.add_argument("--ns", default="10,100,1000,10000")
    common(p)

    p = verify.add_parser("thm24", help="paired deterministic/random convergence tables")
    family_opts(p)
    p.add_argument("--triple", default="pareto:1")
    p.add_argument("--ns", default="10,100,1000,10000")
    common(p)

    p = verify.add_parser("thm31", help="same-type decomposition residuals")
    family_opts(p)
    p.add_argument("--marginal", default="frechet:1")
    p.add_argument("--dependence", default="none",
                   help="none | independence | complete (bivariate uses the marginal twice)")
    p.add_argument("--thetas", default="0.5,0.1,0.01")
    common(p)

    p = verify.add_parser("thm32", help="subordination check by exact sampling")
    family_opts(p)
    p.add_argument("--marginal", default="frechet:1")
    p.add_argument("--dependence", default="none")
    p.add_argument("--n", type=int, default=100_000)
    common(p)

    p = verify.add_parser("thm34", help="random domain of max-attraction")
    family_opts(p)
    p.add_argument("--triple", default="pareto:1")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--m", type=int, default=20_000)
    common(p)

    sample = subparsers.add_parser("sample", help="draw from a sampler").add_subparsers(
        dest="experiment", required=True
    )

    p = sample.add_parser("randmax", help="random maxima of base draws")
    family_opts(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--base", default="pareto:1")
    p.add_argument("--n", type=int, default=10)
    common(p)

    p = sample.add_parser("mixer", help="mixer draws")
    family_opts(p)
    p.add_argument("--n", type=int, default=10)
    common(p)

    p = sample.add_parser("count", help="count draws")
    family_opts(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--n", type=int, default=10)
    common(p)

    p = sample.add_parser("extremal-marginal", help="exact draws of Y(t)")
    p.add_argument("--marginal", default="frechet:1")
    p.add_argument("--dependence", default="none")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--n", type=int, default=10)
    common(p)

    extremal = subparsers.add_parser("extremal", help="extremal process tools").add_subparsers(
        dest="experiment", required=True
    )
    p = extremal.add_parser("path", help="simulate jump-chain trajectories")
    p.add_argument("--marginal", default="frechet:1")
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--floor", type=float, default=None)
    p.add_argument("--paths", type=int, default=1)
    common(p)

    table = subparsers.add_parser("table", help="analytic tables").add_subparsers(
        dest="experiment", required=True
    )
    p = table.add_parser("doa", help="domain-of-attraction gaps along n")
    p.add_argument("--triple", default="pareto:1")
    p.add_argument("--ns", default="10,100,1000,10000")
    common(p)

    return parser


def _splice_config(argv):
    """Insert config-file values as flags right after the subcommand tokens.

    Explicit command-line flags appear later and therefore win.  Unknown
    keys surface as unrecognized arguments (exit 2).
    """
    if "--config" not in " ".join(argv):
        return argv
    argv = list(argv)
    path = None
    cut = None
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise ConfigurationError("--config needs a file path")
            path = argv[i + 1]
            cut = (i, i + 2)
            break
        if tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            cut = (i, i + 1)
            break
    if path is None:
        return argv
    del argv[cut[0]:cut[1]]
    flags = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path!r}: {exc}")
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{line_no}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        flags += [f"--{key}", value]
    # keep verb and experiment tokens first
    head = []
    rest = list(argv)
    while rest and not rest[0].startswith("-") and len(head) < 2:
        head.append(rest.pop(0))
    return head + flags + rest


def emit_csv(table, path):
    """Write one table as CSV: header row, then data rows, newline \\n."""
    Path(path).write_text(table.csv_text(), encoding="utf-8")


def _write_report(report, outdir, stem):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for table in report.tables:
        emit_csv(table, outdir / f"{stem}_{table.name}.csv")
    summary = report.summary_text()
    (outdir / f"{stem}_summary.txt").write_text(summary, encoding="utf-8")
    sys.stdout.write(summary)
    return 0 if report.passed else 1


def _write_samples(table, outdir, stem):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    emit_csv(table, outdir / f"{stem}.csv")
    sys.stdout.write(f"{stem}: wrote {len(table.rows)} rows\n")
    return 0


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    return int(os.environ.get(DEFAULT_SEED_ENV, "0"))


def _sample_table(values, name):
    values = np.atleast_1d(values)
    if values.ndim == 1:
        columns = ("index", "value")
        rows = tuple((i, float(v)) for i, v in enumerate(values))
    else:
        columns = ("index",) + tuple(f"x{i}" for i in range(values.shape[1]))
        rows = tuple((i, *map(float, row)) for i, row in enumerate(values))
    return Table(name=name, columns=columns, rows=rows)


def _run_verify(args, seed):
    name = args.experiment
    if name == "poincare":
        return run_poincare(
            make_family(args),
            thetas=_parse_float_list(args.thetas),
            s_grid=_parse_float_list(args.s_grid),
        )
    if name == "lemma12":
        return run_lemma12(
            make_family(args), args.theta, args.n, seed,
            threshold=args.threshold, threads=args.threads,
        )
    if name == "definetti":
        return run_definetti(make_family(args), parse_base(args.triple), ns=_parse_int_list(args.ns))
    if name == "thm24":
        return run_thm24(make_family(args), parse_base(args.triple), ns=_parse_int_list(args.ns))
    if name == "thm31":
        return run_thm31(make_family(args), make_law(args), thetas=_parse_float_list(args.thetas))
    if name == "thm32":
        return run_thm32(make_family(args), make_law(args), args.n, seed, threads=args.threads)
    if name == "thm34":
        return run_thm34(
            make_family(args), parse_base(args.triple), args.n, args.m, seed,
            threads=args.threads,
        )
    raise ConfigurationError(f"unknown verify experiment {name!r}")


def _run_sample(args, seed):
    name = args.experiment
    if name == "randmax":
        scheme = CountScheme(make_family(args), args.theta)
        base = parse_base(args.base).base
        values = sample_random_max_seeded(scheme, base, seed, args.n, threads=args.threads)
        return _sample_table(values, "randmax")
    if name == "mixer":
        family = make_family(args)
        values = chunked_draws(
            seed, args.n, lambda rng, m: np.atleast_1d(family.sample_mixer(rng, m)),
            threads=args.threads,
        )
        return _sample_table(values, "mixer")
    if name == "count":
        scheme = CountScheme(make_family(args), args.theta)
        values = chunked_draws(
            seed, args.n, lambda rng, m: np.atleast_1d(scheme.sample(rng, m)),
            threads=args.threads,
        )
        return _sample_table(values, "count")
    if name == "extremal-marginal":
        law = make_law(args)
        values = chunked_draws(
            seed, args.n, lambda rng, m: sample_Y_at_time(law, args.t, rng, size=m),
            threads=args.threads,
        )
        return _sample_table(values, "extremal-marginal")
    raise ConfigurationError(f"unknown sample experiment {name!r}")


def _run_extremal_path(args, seed):
    marginal = parse_marginal(args.marginal)
    law = MaxStableLaw((marginal,))
    paths = simulate_paths(
        law, args.horizon, args.paths, seed, floor=args.floor, threads=args.threads
    )
    rows = []
    for pid, path in enumerate(paths):
        for t, s in zip(path.times, path.states):
            rows.append((pid, float(t), float(s)))
    return Table(name="path", columns=("path_id", "time", "state"), rows=tuple(rows))


def main(argv=None):
    try:
        argv = _splice_config(list(sys.argv[1:] if argv is None else argv))
    except ConfigurationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        seed = _resolve_seed(args)
        if args.verb == "verify":
            report = _run_verify(args, seed)
            return _write_report(report, args.out, report.name)
        if args.verb == "sample":
            table = _run_sample(args, seed)
            return _write_samples(table, args.out, table.name)
        if args.verb == "extremal":
            table = _run_extremal_path(args, seed)
            return _write_samples(table, args.out, table.name)
        if args.verb == "table":
            report = run_doa_table(parse_base(args.triple), ns=_parse_int_list(args.ns))
            return _write_report(report, args.out, report.name)
        raise ConfigurationError(f"unknown command {args.verb!r}")
    except (ConfigurationError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except RandmaxError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
