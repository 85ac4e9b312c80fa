"""Command-line front end: build contexts, run suites, emit reports.

Usage examples::

    chow-verify flop --r 2 --mode formal
    chow-verify binomial --r-max 12
    chow-verify blowup --case linear:4,1
    chow-verify all --format json --out report.json

Exit status 0 if every check passed, 1 on any failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import blowup as bl_mod
from . import chern, flop
from .errors import ConsistencyError
from .projbundle import ProjBundleRing, binomial_identity_check
from .report import Report
from .rings import GradedRing

SUITES = ("binomial", "projbundle", "blowup", "charclass", "flop", "all")

USAGE_EXIT = 2
FAIL_EXIT = 1


@dataclass
class SuiteConfig:
    suite: str
    r: int | None = None
    r_max: int | None = None
    mode: str = "formal"
    trials: int = 5
    seed: int = 0
    dim_bound: int | None = None
    case: str | None = None
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.mode not in ("formal", "numeric"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.r is not None and self.r < 1:
            raise ValueError("--r must be >= 1")
        if self.r_max is not None and self.r_max < 1:
            raise ValueError("--r-max must be >= 1")
        if self.trials < 1:
            raise ValueError("--trials must be >= 1")
        _parse_case(self.case)  # syntax-checked up front


# ------------------------------------------------------------------ suites


def _generic_tower(r: int, dim_bound: int | None) -> ProjBundleRing:
    """P(F) for a rank-(r+1) bundle with generic Chern classes."""
    S = GradedRing([(f"c{i}", i) for i in range(1, r + 2)], dim_bound=dim_bound)
    F = chern.BundleClass(S, r + 1, [S.gen(f"c{i}") for i in range(1, r + 2)])
    return ProjBundleRing(S, F, hyperplane="h")


def suite_binomial(cfg: SuiteConfig) -> Report:
    report = Report()
    r_max = cfg.r_max or cfg.r or 12

    for r in range(1, r_max + 1):

        def check(r=r):
            ok, failures = binomial_identity_check(r)
            if not ok:
                raise ConsistencyError(
                    f"binomial identity fails at r={r}", witness=str(failures[:3])
                )

        report.run(
            f"binomial.identity_r{r}",
            "alternating binomial double sum collapses to a sign",
            check,
        )
    return report


def suite_projbundle(cfg: SuiteConfig) -> Report:
    report = Report()
    r_max = cfg.r_max or cfg.r or 5
    for r in range(1, r_max + 1):
        P = _generic_tower(r, cfg.dim_bound)

        def push_table(P=P, r=r):
            n = r + 1
            for k in range(n + 1):
                got = P.pushforward_power(k)
                if k <= n - 2:
                    expected = P.base.zero
                elif k == n - 1:
                    expected = P.base.one
                else:
                    expected = -P.bundle.c(1)
                if got != expected:
                    raise ConsistencyError(
                        f"pushforward table wrong at h^{k}, r={r}",
                        witness=str(got - expected),
                    )

        report.run(
            f"projbundle.push_table_r{r}",
            "pushforward of hyperplane powers matches the Segre table",
            push_table,
        )

        def tau_consistency(P=P, r=r):
            P.tau_rows(3 * r)  # raises on route disagreement

        report.run(
            f"projbundle.tau_consistency_r{r}",
            "tau table: recursion route vs reduction route",
            tau_consistency,
        )

        def cotangent(P=P, r=r):
            for i in range(r + 1):
                closed = P.cotangent_chern(i)
                euler = P.cotangent_chern_via_euler(i)
                if closed != euler:
                    raise ConsistencyError(
                        f"cotangent c_{i} routes disagree at r={r}",
                        witness=str(closed - euler),
                    )
                tw_closed = P.cotangent_twist_chern(i)
                tw_tensor = P.cotangent_twist_via_tensor(i)
                if tw_closed != tw_tensor:
                    raise ConsistencyError(
                        f"twisted cotangent c_{i} routes disagree at r={r}",
                        witness=str(tw_closed - tw_tensor),
                    )

        report.run(
            f"projbundle.cotangent_r{r}",
            "relative cotangent Chern classes, closed form vs Euler sequence",
            cotangent,
        )
    return report


def _parse_case(case: str | None) -> tuple[int, int]:
    if case is None:
        return 4, 1
    kind, _, rest = case.partition(":")
    if kind != "linear":
        raise ValueError(f"unknown blow-up case {case!r}")
    try:
        n_str, m_str = rest.split(",")
        return int(n_str), int(m_str)
    except ValueError:
        raise ValueError(f"bad case syntax {case!r}, expected linear:n,m") from None


def suite_blowup(cfg: SuiteConfig) -> Report:
    report = Report()
    n, m = _parse_case(cfg.case)
    data = bl_mod.linear_blowup(n, m)
    bl = bl_mod.BlowupRing(data)
    rng = random.Random(cfg.seed)

    def validate():
        rep = bl_mod.embedding_validate(data, samples=cfg.trials, seed=cfg.seed)
        if not rep.ok:
            raise ConsistencyError(
                "embedding data rejected", witness="; ".join(rep.failures)
            )

    report.run(
        "blowup.embedding_valid",
        "restriction, projection formula, self-intersection on samples",
        validate,
    )

    def key_formula():
        for d in range(m + 1):
            gamma = data.center.random_homogeneous(rng, d)
            bl_mod.key_formula_check(bl, gamma)

    report.run(
        "blowup.key_formula",
        "pullback of a pushed center class vs exceptional pushforward",
        key_formula,
    )

    def round_trip():
        for d in range(n + 1):
            alpha = data.ambient.random_homogeneous(rng, d)
            if bl.push(bl.pull(alpha)) != alpha:
                raise ConsistencyError(f"push after pull is not identity at degree {d}")

    report.run(
        "blowup.pull_push_identity",
        "pushforward after pullback is the identity on the ambient ring",
        round_trip,
    )

    def associativity():
        trials = max(cfg.trials, 200)
        for _ in range(trials):
            trio = []
            for _ in range(3):
                alpha = data.ambient.random_element(rng, n)
                eps = bl.E.random_element(rng, n)
                trio.append(bl.exc_push(eps) + bl.pull(alpha))
            a, b, c = trio
            if (a * b) * c != a * (b * c):
                raise ConsistencyError("blow-up product is not associative")
            if a * b != b * a:
                raise ConsistencyError("blow-up product is not commutative")

    report.run(
        "blowup.ring_laws",
        "associativity and commutativity on seeded random triples",
        associativity,
    )
    return report


def suite_charclass(cfg: SuiteConfig) -> Report:
    report = Report()
    rng = random.Random(cfg.seed)
    S = GradedRing(
        [("x1", 1), ("x2", 2), ("y1", 1), ("y2", 2)], dim_bound=cfg.dim_bound or 8
    )
    E = chern.BundleClass(S, 3, [S.gen("x1"), S.gen("x2"), S.gen("x1") * S.gen("x2")])
    F = chern.BundleClass(S, 2, [S.gen("y1"), S.gen("y2")])

    def chern_segre():
        total_c = E.total_chern()
        total_s = S.zero
        for k, s in enumerate(chern.segre_classes(E, 8)):
            total_s = total_s + s
        prod = total_c * total_s
        for d in range(1, 9):
            if prod.grade_component(d):
                raise ConsistencyError(
                    f"c(E)s(E) has a nonzero degree-{d} part",
                    witness=str(prod.grade_component(d)),
                )

    report.run(
        "charclass.chern_segre_inverse",
        "total Chern times total Segre is 1 through degree 8",
        chern_segre,
    )

    def additivity():
        W = chern.whitney_sum(E, F)
        lhs = chern.chern_character(W, 6)
        rhs = chern.chern_character(E, 6) + chern.chern_character(F, 6)
        if lhs != rhs:
            raise ConsistencyError("Chern character is not additive on sums")

    report.run(
        "charclass.ch_additive",
        "Chern character additive on direct sums through degree 6",
        additivity,
    )

    def td_multiplicative():
        W = chern.whitney_sum(E, F)
        lhs = chern.todd_class(W, 6)
        rhs = chern.todd_class(E, 6) * chern.todd_class(F, 6)
        if lhs != rhs:
            raise ConsistencyError("Todd class is not multiplicative on sums")

    report.run(
        "charclass.td_multiplicative",
        "Todd class multiplicative on direct sums through degree 6",
        td_multiplicative,
    )

    def sqrt_squares():
        td = chern.todd_class(E, 6)
        root = chern.sqrt_one_series(td)
        if root * root != td:
            raise ConsistencyError("square root of the Todd class does not square back")

    report.run(
        "charclass.sqrt_todd",
        "square root of the Todd class squares back, through degree 6",
        sqrt_squares,
    )

    def twist_formula():
        for _ in range(cfg.trials):
            line = S.random_homogeneous(rng, 1)
            lhs = chern.chern_character(chern.tensor_by_line(E, line), 6)
            exp_l = S.one
            power = S.one
            for k in range(1, 7):
                power = power * line
                exp_l = exp_l + power * Fraction(1, math.factorial(k))
            rhs = chern.chern_character(E, 6) * chern.CharClass(exp_l, 6)
            if lhs != rhs:
                raise ConsistencyError("twist by a line bundle breaks ch")

    report.run(
        "charclass.ch_twist",
        "ch of a line-bundle twist is ch times the exponential",
        twist_formula,
    )
    return report


def suite_flop(cfg: SuiteConfig) -> Report:
    report = Report()
    if cfg.r is not None:
        ranks = [cfg.r]
    else:
        ranks = list(range(1, (cfg.r_max or 3) + 1))
    for r in ranks:
        ctx = flop.FlopContext(r, mode="formal")
        sub = flop.verify_foundations(ctx)
        for c in sub.checks:
            c.name = f"r{r}.{c.name}"
        report.extend(sub.checks)
        if cfg.mode == "formal":
            sa, sb = ctx.formal_sigmas()
            sub = flop.verify_multiplicativity(ctx, sa, sb)
            for c in sub.checks:
                c.name = f"r{r}.{c.name}"
            report.extend(sub.checks)
        else:
            rng = random.Random(cfg.seed)
            for t in range(cfg.trials):
                sa = ctx.random_sigma(rng)
                sb = ctx.random_sigma(rng)
                sub = flop.verify_multiplicativity(ctx, sa, sb)
                for c in sub.checks:
                    c.name = f"r{r}.trial{t}.{c.name}"
                report.extend(sub.checks)
    return report


SUITE_RUNNERS = {
    "binomial": suite_binomial,
    "projbundle": suite_projbundle,
    "blowup": suite_blowup,
    "charclass": suite_charclass,
    "flop": suite_flop,
}


def run_suite(cfg: SuiteConfig) -> tuple[int, Report]:
    report = Report()
    if cfg.suite == "all":
        names = [s for s in SUITES if s != "all"]
    else:
        names = [cfg.suite]
    for name in names:
        report.extend(SUITE_RUNNERS[name](cfg).checks)
    return (0 if report.ok else FAIL_EXIT), report


# -------------------------------------------------------------------- main


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chow-verify",
        description="Run exact intersection-theory verification suites.",
    )
    parser.add_argument("suite_pos", nargs="?", choices=SUITES, metavar="suite")
    parser.add_argument("--suite", choices=SUITES)
    parser.add_argument("--r", type=int)
    parser.add_argument("--r-max", type=int, dest="r_max")
    parser.add_argument("--mode", choices=("formal", "numeric"))
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--dim-bound", type=int, dest="dim_bound")
    parser.add_argument("--case")
    parser.add_argument("--format", choices=("text", "json"), dest="fmt")
    parser.add_argument("--out")
    parser.add_argument("--config", help="flat key=value file mirroring the flags")
    return parser


_INT_KEYS = {"r", "r_max", "trials", "seed", "dim_bound"}


def parse_config(argv: list[str]) -> SuiteConfig:
    args = build_parser().parse_args(argv)
    values: dict = {}
    if args.config:
        for key, value in _load_config_file(args.config).items():
            if key == "format":
                key = "fmt"
            if key in _INT_KEYS:
                value = int(value)
            values[key] = value
    for key in ("suite", "r", "r_max", "mode", "trials", "seed",
                "dim_bound", "case", "fmt", "out"):
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    if args.suite_pos is not None:
        if args.suite is not None and args.suite != args.suite_pos:
            raise ValueError("positional suite conflicts with --suite")
        values["suite"] = args.suite_pos
    if "suite" not in values:
        raise ValueError("no suite selected")
    allowed = {"suite", "r", "r_max", "mode", "trials", "seed",
               "dim_bound", "case", "fmt", "out"}
    unknown = set(values) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return SuiteConfig(**{k: v for k, v in values.items() if v is not None})


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse's own usage handling
        return USAGE_EXIT if exc.code else 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    status, report = run_suite(cfg)
    if cfg.fmt == "json":
        text = report.to_json(
            suite=cfg.suite, seed=cfg.seed, mode=cfg.mode, trials=cfg.trials
        )
    else:
        text = report.to_text()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
