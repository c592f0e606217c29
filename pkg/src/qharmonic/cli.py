"""Command line front end.

Subcommands:

* ``verify``: check one identity at one (n, m) cell.
* ``sweep``: check one identity over the whole grid 1..n x 1..m.
* ``table``: print a chain-sum family at indices 1..n for a fixed weight m.
* ``matrix``: print the connection matrices at a given size and confirm the
  relations between them.
* ``selftest``: run the built-in property suite.

Exit status: 0 when everything checked holds (or the command is purely
informational), 1 when a verification fails (the failing cells are printed),
2 for usage errors.  Output formats: text (default), json, csv (csv for
verify, sweep, and table).
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from qharmonic.exact_core import (
    Poly,
    RatFunc,
    cross_equal,
    poly_from_strs,
    poly_to_strs,
    rat_to_str,
    ratfunc_from_obj,
    ratfunc_to_obj,
)
from qharmonic.qcombinatorics import (
    GaussianTable,
    q_pochhammer,
    qbt_alternating_sum,
    qbt_partition_sum,
)
from qharmonic.sums import (
    ChainSumSpec,
    mhs_endpoint,
    mhs_full,
    mhs_naive_oracle,
    power_sum,
    q_mhs_endpoint,
    q_mhs_full,
    q_mhs_full_at,
    q_power_sum,
)
from qharmonic.transforms import (
    QMatrix,
    SequenceTable,
    TruncatedSeries,
    alt_binomial_roundtrip,
    build_matrix,
    euler_involution_series,
    proof_basis_a,
    proof_basis_b,
    q_transform_first,
    q_transform_roundtrip,
    q_transform_second,
    qmatrix_mul,
)
from qharmonic import identities
from qharmonic.identities import (
    CLASSICAL_IDENTITIES,
    IDENTITY_NAMES,
    IdentityReport,
    Q_IDENTITIES,
    degeneration_check,
    sample_points,
    sweep,
    verify_sampled,
)

__all__ = ["CliConfig", "build_parser", "config_from_args", "entry", "main", "run", "selftest"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

CSV_HEADER = ["identity", "n", "m", "mode", "equal", "lhs", "rhs"]

SUM_FAMILIES = (
    "power_sum",
    "mhs_full",
    "mhs_endpoint",
    "q_power_sum",
    "q_mhs_full",
    "q_mhs_endpoint",
)


@dataclass
class CliConfig:
    """Parsed invocation; ``n`` and ``m`` double as the sweep upper bounds."""

    command: str
    identity: Optional[str] = None
    n: int = 1
    m: int = 1
    mode: str = "symbolic"
    samples: int = 5
    seed: int = 0
    format: str = "text"
    family: Optional[str] = None
    size: Optional[int] = None
    quick: bool = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qharmonic",
        description="Exact verification of harmonic-sum binomial identities "
        "and their q-analogues.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_identity_args(sp: argparse.ArgumentParser, bounds: bool) -> None:
        hint = " (upper bound of the sweep grid)" if bounds else ""
        sp.add_argument("--identity", required=True, choices=IDENTITY_NAMES)
        sp.add_argument("--n", type=int, required=True, help=f"outer index n{hint}")
        sp.add_argument("--m", type=int, required=True, help=f"weight m{hint}")
        sp.add_argument(
            "--mode",
            choices=("symbolic", "sampled"),
            default="symbolic",
            help="q identities only; classical identities are always exact",
        )
        sp.add_argument("--samples", type=int, default=5, help="points in sampled mode")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled points")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    add_identity_args(sub.add_parser("verify", help="check one identity at one cell"), False)
    add_identity_args(sub.add_parser("sweep", help="check one identity over a grid"), True)

    table = sub.add_parser("table", help="print a chain-sum family at indices 1..n")
    table.add_argument("--family", required=True, choices=SUM_FAMILIES)
    table.add_argument("--n", type=int, required=True, help="largest index to print")
    table.add_argument("--m", type=int, required=True, help="weight")
    table.add_argument("--format", choices=("text", "json", "csv"), default="text")

    matrix = sub.add_parser(
        "matrix", help="print the connection matrices and check their relations"
    )
    matrix.add_argument("--size", type=int, required=True)
    matrix.add_argument("--format", choices=("text", "json"), default="text")

    selftest_p = sub.add_parser("selftest", help="run the built-in property suite")
    selftest_p.add_argument("--quick", action="store_true", help="smaller bounds")

    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    cfg = CliConfig(command=ns.command)
    for field in ("identity", "n", "m", "mode", "samples", "seed", "format", "family", "size", "quick"):
        if hasattr(ns, field):
            setattr(cfg, field, getattr(ns, field))
    return cfg


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    return run(config_from_args(ns))


def entry() -> None:
    raise SystemExit(main())


def run(config: CliConfig) -> int:
    """Execute a parsed invocation; returns the process exit status."""
    handlers: dict = {
        "verify": _cmd_verify,
        "sweep": _cmd_sweep,
        "table": _cmd_table,
        "matrix": _cmd_matrix,
        "selftest": _cmd_selftest,
    }
    handler = handlers.get(config.command)
    if handler is None:
        print(f"error: unknown command {config.command!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return handler(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


# ---------------------------------------------------------------------------
# verify and sweep
# ---------------------------------------------------------------------------

def _make_report(config: CliConfig, n: int, m: int) -> IdentityReport:
    identity = config.identity
    if identity in CLASSICAL_IDENTITIES:
        return identities._verify_exact(identity, n, m)
    if config.mode == "sampled":
        pts = sample_points(config.samples, config.seed)
        return verify_sampled(identity, n, m, pts, seed=config.seed)
    return identities._verify_symbolic(identity, n, m)


def _cmd_verify(config: CliConfig) -> int:
    if config.identity is None:
        raise ValueError("verify requires --identity")
    report = _make_report(config, config.n, config.m)
    _emit_reports([report], config.format, verbose=True)
    if not report.equal:
        print(f"verification FAILED at (n, m) = ({report.n}, {report.m})")
        return EXIT_FAIL
    return EXIT_OK


def _cmd_sweep(config: CliConfig) -> int:
    if config.identity is None:
        raise ValueError("sweep requires --identity")
    reports = sweep(
        config.identity,
        config.n,
        config.m,
        mode=config.mode,
        samples=config.samples,
        seed=config.seed,
    )
    _emit_reports(reports, config.format, verbose=False)
    failures = [r for r in reports if not r.equal]
    if config.format == "text":
        print(f"{len(reports) - len(failures)}/{len(reports)} cells equal")
    if failures:
        cells = ", ".join(f"({r.n}, {r.m})" for r in failures)
        print(f"verification FAILED at (n, m) = {cells}")
        return EXIT_FAIL
    return EXIT_OK


def _emit_reports(reports: list, fmt: str, verbose: bool) -> None:
    if fmt == "json":
        payload = [r.to_json_obj() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
        return
    if fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(CSV_HEADER)
        for r in reports:
            writer.writerow(r.csv_row())
        return
    for r in reports:
        flag = "ok" if r.equal else "FAIL"
        line = f"{r.identity} n={r.n} m={r.m} [{r.mode}] {flag}"
        if verbose or not r.equal:
            print(line)
            print(f"  lhs = {r.side_text(r.lhs)}")
            print(f"  rhs = {r.side_text(r.rhs)}")
            if r.den_degrees is not None:
                print(f"  denominator degrees: lhs {r.den_degrees[0]}, rhs {r.den_degrees[1]}")
            if r.sample_points is not None:
                pts = ", ".join(rat_to_str(p) for p in r.sample_points)
                print(f"  sample points (seed {r.seed}): {pts}")
        else:
            print(line)


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

_FAMILY_FUNCS: dict = {
    "power_sum": power_sum,
    "mhs_full": mhs_full,
    "mhs_endpoint": lambda j, m: mhs_endpoint(j, m),
    "q_power_sum": q_power_sum,
    "q_mhs_full": q_mhs_full,
    "q_mhs_endpoint": lambda j, m: q_mhs_endpoint(j, m),
}


def _cmd_table(config: CliConfig) -> int:
    if config.family is None:
        raise ValueError("table requires --family")
    func = _FAMILY_FUNCS[config.family]
    values = [func(j, config.m) for j in range(1, config.n + 1)]
    if config.format == "json":
        def ser(v):
            return ratfunc_to_obj(v) if isinstance(v, RatFunc) else rat_to_str(v)

        print(
            json.dumps(
                {
                    "family": config.family,
                    "m": config.m,
                    "values": [ser(v) for v in values],
                },
                indent=2,
            )
        )
        return EXIT_OK
    if config.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["family", "n", "m", "value"])
        for j, v in enumerate(values, start=1):
            writer.writerow([config.family, j, config.m, str(v)])
        return EXIT_OK
    print(f"{config.family} at weight m={config.m}:")
    for j, v in enumerate(values, start=1):
        print(f"  {j}: {v}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# matrix
# ---------------------------------------------------------------------------

def _cmd_matrix(config: CliConfig) -> int:
    size = config.size
    if size is None:
        raise ValueError("matrix requires --size")
    t = build_matrix("T", size)
    t_inv = build_matrix("T_inv", size)
    s = build_matrix("S", size)
    u = build_matrix("U", size)
    v = build_matrix("V", size)
    product = qmatrix_mul(v, qmatrix_mul(t_inv, u))
    inverse_ok = qmatrix_mul(t, t_inv) == QMatrix.identity(size)
    factor_ok = s == product
    if config.format == "json":
        print(
            json.dumps(
                {
                    "size": size,
                    "T": t.to_obj()["entries"],
                    "T_inv": t_inv.to_obj()["entries"],
                    "S": s.to_obj()["entries"],
                    "V_T_inv_U": product.to_obj()["entries"],
                    "T_times_T_inv_is_identity": inverse_ok,
                    "S_equals_V_T_inv_U": factor_ok,
                },
                indent=2,
            )
        )
    else:
        for name, mat in (("T", t), ("T_inv", t_inv), ("S", s), ("V*T_inv*U", product)):
            print(f"{name} (size {size}):")
            for row in mat.entries:
                print("  [" + ", ".join(str(e) for e in row) + "]")
        print(f"T * T_inv == identity: {inverse_ok}")
        print(f"S == V * T_inv * U: {factor_ok}")
    return EXIT_OK if (inverse_ok and factor_ok) else EXIT_FAIL


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

class SelfTestError(Exception):
    """A property-suite check failed; the message names the counterexample."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SelfTestError(msg)


def _random_poly(rng: random.Random, max_deg: int) -> Poly:
    return Poly(
        Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        for _ in range(rng.randint(1, max_deg + 1))
    )


def _random_ratfunc(rng: random.Random, max_deg: int) -> RatFunc:
    num = _random_poly(rng, max_deg)
    den = Poly.zero()
    while den.is_zero:
        den = _random_poly(rng, max_deg)
    return RatFunc(num, den)


def _check_core_arithmetic(rng: random.Random, quick: bool, table) -> None:
    rounds = 6 if quick else 12
    for _ in range(rounds):
        a = _random_ratfunc(rng, 4)
        b = _random_ratfunc(rng, 4)
        c = _random_ratfunc(rng, 4)
        _require((a + b) * c == a * c + b * c, "distributivity failed")
        _require(a - a == RatFunc.zero(), "cancellation failed")
        _require(cross_equal(a + b, b + a), "commutativity failed")
        x = Fraction(rng.randint(1, 9), 10)
        try:
            lhs = (a * b).evaluate(x)
            rhs = a.evaluate(x) * b.evaluate(x)
        except ZeroDivisionError:
            continue
        _require(lhs == rhs, f"evaluation is not multiplicative at {x}")
        _require(
            ratfunc_from_obj(ratfunc_to_obj(a)) == a, "serialization round trip failed"
        )
        _require(
            poly_from_strs(poly_to_strs(a.num)) == a.num,
            "polynomial serialization round trip failed",
        )


def _check_gaussian_table(rng: random.Random, quick: bool, table) -> None:
    table = table if table is not None else GaussianTable.build(6 if quick else 10)
    for n in range(table.n_max + 1):
        for k in range(n + 1):
            g = table.entry(n, k)
            if 1 <= k <= n - 1:
                expected = table.entry(n - 1, k - 1) + table.entry(n - 1, k).shift(k)
                _require(g == expected, f"recurrence fails at gauss({n}, {k})")
            _require(
                g == table.entry(n, n - k), f"symmetry fails at gauss({n}, {k})"
            )
            _require(
                g.degree == k * (n - k), f"degree wrong at gauss({n}, {k})"
            )
            _require(
                g.evaluate(1) == _comb(n, k), f"value at q=1 wrong at gauss({n}, {k})"
            )
            _require(
                all(isinstance(c, int) and c >= 0 for c in g.coeffs),
                f"coefficients not nonnegative integers at gauss({n}, {k})",
            )


def _comb(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def _check_q_expansions(rng: random.Random, quick: bool, table) -> None:
    n_max = 3 if quick else 6
    points = [2, Fraction(3, 2), Poly.q(), Poly.q_power(2)]
    for n in range(n_max + 1):
        for x in points:
            _require(
                qbt_alternating_sum(n, x) == q_pochhammer(x, n),
                f"alternating expansion fails at n={n}, x={x}",
            )
            _require(
                qbt_partition_sum(n, x) == RatFunc.one(),
                f"partition expansion fails at n={n}, x={x}",
            )


def _check_chain_sums(rng: random.Random, quick: bool, table) -> None:
    top = 3 if quick else 4
    for n in range(1, top + 1):
        for m in range(1, top + 1):
            spec = ChainSumSpec(n, m)
            _require(
                mhs_full(n, m) == mhs_naive_oracle(spec),
                f"classical full sum differs from oracle at ({n}, {m})",
            )
            _require(
                q_mhs_full(n, m) == mhs_naive_oracle(spec, q_side=True),
                f"q full sum differs from oracle at ({n}, {m})",
            )
            espec = ChainSumSpec(n, m, endpoint=n)
            _require(
                q_mhs_endpoint(n, m) == mhs_naive_oracle(espec, q_side=True),
                f"q endpoint sum differs from oracle at ({n}, {m})",
            )
    q0 = Fraction(1, 3)
    _require(
        q_mhs_full(top, 2).evaluate(q0) == q_mhs_full_at(top, 2, q0),
        "symbolic and evaluated q sums disagree",
    )
    for n in range(1, (4 if quick else 6)):
        for m in (1, 2):
            _require(
                degeneration_check("dilcher_q", n, m)
                and degeneration_check("hernandez_q", n, m),
                f"degeneration at q=1 fails at ({n}, {m})",
            )


def _check_inverse_pair(rng: random.Random, quick: bool, table) -> None:
    rounds = 4 if quick else 8
    for _ in range(rounds):
        length = rng.randint(1, 6)
        seq = SequenceTable.from_values(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(length)]
        )
        _require(
            alt_binomial_roundtrip(seq) == seq, "classical inverse pair fails"
        )
    for _ in range(2 if quick else 4):
        length = rng.randint(1, 4)
        seq = SequenceTable.from_values([_random_poly(rng, 2) for _ in range(length)])
        _require(q_transform_roundtrip(seq) == seq, "q inverse pair fails")
    n_top = 3 if quick else 5
    for x in (2, Fraction(3, 2), Poly.q(), Poly.q_power(2)):
        a_seq = SequenceTable.from_values(
            [proof_basis_a(x, n) for n in range(n_top + 1)]
        )
        firsts = [q_transform_first(a_seq, n) for n in range(n_top + 1)]
        for n in range(n_top + 1):
            diff = firsts[n] - (firsts[n - 1] if n else RatFunc.zero())
            want = proof_basis_b(x, n) if n else RatFunc.one()
            _require(diff == want, f"first-transform relation fails at n={n}, x={x}")
        b_seq = SequenceTable.from_values(
            [proof_basis_b(x, n) for n in range(n_top + 1)]
        )
        for n in range(n_top + 1):
            got = q_transform_second(b_seq, n)
            want = RatFunc.zero()
            for k in range(n + 1):
                want = want + RatFunc.q_power(-k) * proof_basis_a(x, k)
            _require(got == want, f"second-transform relation fails at n={n}, x={x}")
    for order in range(1, 5 if quick else 9):
        series = TruncatedSeries.from_values(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)]
        )
        _require(
            euler_involution_series(euler_involution_series(series)) == series,
            f"involution applied twice is not the identity at order {order}",
        )


def _check_matrices(rng: random.Random, quick: bool, table) -> None:
    for size in range(1, (4 if quick else 6) + 1):
        t = build_matrix("T", size)
        t_inv = build_matrix("T_inv", size)
        _require(
            qmatrix_mul(t, t_inv) == QMatrix.identity(size),
            f"T * T_inv is not the identity at size {size}",
        )
        product = qmatrix_mul(t_inv, build_matrix("U", size))
        _require(
            product == build_matrix("T_inv_U", size),
            f"T_inv * U closed form fails at size {size}",
        )
        full = qmatrix_mul(build_matrix("V", size), product)
        _require(
            full == build_matrix("S", size),
            f"S != V * T_inv * U at size {size}",
        )


def _check_identities(rng: random.Random, quick: bool, table) -> None:
    n_top, m_top = (4, 2) if quick else (5, 3)
    for name in IDENTITY_NAMES:
        for report in sweep(name, n_top, m_top):
            _require(
                report.equal,
                f"{name} fails symbolically at ({report.n}, {report.m})",
            )
    pts = sample_points(2, 7)
    for name in Q_IDENTITIES:
        rep = verify_sampled(name, n_top, m_top, pts, seed=7)
        _require(rep.equal, f"{name} fails at sampled points {pts}")


_SELFTEST_CHECKS = (
    ("core_arithmetic", _check_core_arithmetic),
    ("gaussian_table", _check_gaussian_table),
    ("q_expansions", _check_q_expansions),
    ("chain_sums", _check_chain_sums),
    ("inverse_pair", _check_inverse_pair),
    ("connection_matrices", _check_matrices),
    ("identities_grid", _check_identities),
)


def selftest(
    quick: bool = False,
    table: Optional[GaussianTable] = None,
    log: Callable[[str], None] = print,
) -> int:
    """Run the property suite; returns 0 on success, 1 on any failure.

    ``table`` substitutes the Gaussian triangle the table check validates;
    passing a deliberately corrupted table must make the suite fail (that is
    the negative control for the suite itself).
    """
    rng = random.Random(1234)
    failures = 0
    for name, check in _SELFTEST_CHECKS:
        try:
            check(rng, quick, table)
        except SelfTestError as exc:
            failures += 1
            log(f"FAIL {name}: {exc}")
        except Exception as exc:  # noqa: BLE001 - a crash is a failed check
            failures += 1
            log(f"FAIL {name}: unexpected {type(exc).__name__}: {exc}")
        else:
            log(f"ok   {name}")
    total = len(_SELFTEST_CHECKS)
    log(f"{total - failures}/{total} checks passed")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _cmd_selftest(config: CliConfig) -> int:
    return selftest(quick=config.quick)
