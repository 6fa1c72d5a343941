#!/usr/bin/env python3
"""
Positive Commutator Toolkit CLI

Exact checks for matrix pairs with AB >= BA >= 0, falsification campaigns and
operator sweeps.

Usage:
    poscomm verify-example 1
    poscomm check-pair pair.json
    poscomm check-pair __dev__/corpus.jsonl
    poscomm search config.json --seed 7 --goal radical-positive
    poscomm volterra 64 --out sweeps/
    poscomm donoghue 10 --weights weights.json
    poscomm radical algebra.json --element "g0*g1 - g1*g0" --expect member

Exit codes: 0 all assertions hold, 1 a mathematical assertion failed,
2 usage or I/O error.
"""

import io
import json
import logging
import re
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional

import typer
from pydantic import BaseModel, TypeAdapter, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

# Add libs to path (local to CLI)
CLI_ROOT = Path(__file__).parent
for _lib in ("py-lattice-core", "py-lattice-classical"):
    if (CLI_ROOT / "libs" / _lib).exists():
        sys.path.insert(0, str(CLI_ROOT / "libs" / _lib))

from lattice_classical import (
    WeightSequence,
    commutator_defect,
    donoghue_chain_cases,
    donoghue_chain_check,
    donoghue_matrix,
    donoghue_shift_check,
    gelfand_estimate,
    nilpotency_index,
    volterra_chain_check,
    volterra_matrix,
    write_csv,
)
from lattice_core.algebra import (
    MatrixAlgebra,
    generate_algebra,
    radical_membership,
    radical_membership_oracle,
)
from lattice_core.exceptions import LatticeToolkitError
from lattice_core.order import LatticeVector, interpolate_positive, unique_interpolant
from lattice_core.ratmat import RationalMatrix, commutator, in_spectrum, is_nilpotent
from lattice_core.reducibility import MAX_ENUMERATION
from lattice_core.schema import AlgebraDump, MatrixModel, PairModel
from search.campaign import Goal, run_campaign, verify_2x2_dichotomy
from search.classify import PairReport, classify_pair, positive_commutator_holds
from search.corpus import read_corpus, reclassify
from search.sampler import SamplerConfig
from search.settings import Settings, load_env_files
from search.templates import example1_standard, example2_standard

# Import version
try:
    from __version__ import __version__
except ImportError:
    __version__ = "0.1.0"

console = Console()
logger = logging.getLogger("poscomm")

app = typer.Typer(
    name="poscomm",
    help="Positive Commutator Toolkit - exact checks for AB >= BA >= 0 on R^n",
    no_args_is_help=True,
)

EXIT_MATH = 1
EXIT_USAGE = 2


class ExampleName(str, Enum):
    ONE = "1"
    TWO = "2"
    EXAM1 = "exam1"
    DICHOTOMY = "2x2-dichotomy"


class Expectation(str, Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"


def version_callback(value: bool):
    """Show version and exit."""
    if value:
        console.print(
            f"[bold cyan]Positive Commutator Toolkit[/bold cyan] version [green]{__version__}[/green]"
        )
        raise typer.Exit()


def _setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@app.callback()
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        False,
        "--version",
        "-V",
        help="Show version and exit",
        callback=version_callback,
        is_eager=True,
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
    env_file: Optional[str] = typer.Option(None, "--env", help="Environment file (.env.local, .env)"),
):
    """Positive Commutator Toolkit - exact checks for AB >= BA >= 0 on R^n."""
    try:
        load_env_files(CLI_ROOT, env_file)
        settings = Settings.from_env()
    except LatticeToolkitError as e:
        console.print(f"[red]❌ {e.message}[/red]")
        raise typer.Exit(EXIT_USAGE)
    _setup_logging("DEBUG" if verbose else settings.log_level)
    ctx.obj = settings


# ============================================================================
# Helper Functions
# ============================================================================


def _fail_usage(message: str) -> typer.Exit:
    console.print(f"[red]❌ {message}[/red]")
    return typer.Exit(EXIT_USAGE)


def _fail_error(e: LatticeToolkitError, json_out: Optional[Path] = None) -> typer.Exit:
    """Usage failure from a toolkit error; the error report goes to --json when given."""
    if json_out is not None:
        _write_json(json_out, e.to_dict())
    return _fail_usage(e.message)


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise _fail_usage(f"Cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise _fail_usage(f"{path} is not valid JSON: {e}")


def _write_json(path: Optional[Path], payload: Any) -> None:
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2, default=str) + "\n", encoding="utf-8")
    except OSError as e:
        raise _fail_usage(f"Cannot write {path}: {e}")


def _print_matrix(title: str, m: RationalMatrix) -> None:
    console.print(f"[bold]{title}[/bold]")
    width = max(len(str(x)) for x in m.entries)
    for row in m.to_rows():
        console.print(
            "  [ " + "  ".join(str(x).rjust(width) for x in row) + " ]", markup=False, highlight=False
        )


def _vector_str(v: tuple[Fraction, ...]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _check(label: str, ok: bool) -> bool:
    mark = "[green]✓[/green]" if ok else "[red]✗[/red]"
    console.print(f"  {mark} {label}", highlight=False)
    return ok


def _report_table(report: PairReport) -> Table:
    table = Table(title="Pair report")
    table.add_column("Flag", style="cyan")
    table.add_column("Value", style="white")
    for key, value in report.flags().items():
        table.add_row(key, str(value))
    return table


def _verdict(report: PairReport) -> str:
    if report.commutator_zero:
        head = "commutator zero"
    elif report.commutator_nilpotent:
        head = "commutator nilpotent"
    else:
        head = "commutator NOT nilpotent"
    return f"{head}; {'in radical' if report.radical_member else 'NOT in radical'}"


# ============================================================================
# verify-example
# ============================================================================


def _verify_pair_example(
    a: RationalMatrix,
    b: RationalMatrix,
    product_label: str,
    product: RationalMatrix,
    fixed: LatticeVector,
) -> bool:
    ab, ba = a @ b, b @ a
    c = ab - ba
    _print_matrix("A", a)
    _print_matrix("B", b)
    _print_matrix("AB", ab)
    _print_matrix("BA", ba)
    _print_matrix("AB - BA", c)
    _print_matrix(product_label, product)

    alg = generate_algebra([a, b], unitized=True)
    certificate = radical_membership(alg, c)
    oracle = radical_membership_oracle(alg, c)

    console.print()
    checks = [
        _check("AB >= BA >= 0", positive_commutator_holds(a, b)),
        _check("AB - BA nilpotent", is_nilpotent(c)),
        _check(f"1 is an eigenvalue of {product_label}", in_spectrum(product, 1)),
        _check(
            f"{product_label} fixes {_vector_str(fixed.entries)}",
            product.apply(fixed.entries) == fixed.entries,
        ),
        _check("trace-form test: AB - BA NOT in radical", not certificate.member),
        _check("nil-ideal test: AB - BA NOT in radical", not oracle),
    ]
    if certificate.witness is not None:
        console.print(f"  witness trace(b (AB - BA)) = {certificate.witness_trace}", highlight=False)
    console.print(f"Eigen-witness: (1, {_vector_str(fixed.entries)})", highlight=False)
    console.print(f"Radical verdict: {'in radical' if certificate.member else 'NOT in radical'}")
    return all(checks)


def _verify_example1() -> bool:
    a, b = example1_standard()
    product = a @ commutator(a, b)
    return _verify_pair_example(a, b, "A(AB - BA)", product, LatticeVector.of([1, 0, 1]))


def _verify_example2() -> bool:
    a, b = example2_standard()
    product = commutator(a, b) @ b
    return _verify_pair_example(a, b, "(AB - BA)B", product, LatticeVector.of([0, 1, 2]))


def _verify_exam1() -> bool:
    xs = [LatticeVector.of([1, 0]), LatticeVector.of([1, 1])]
    ys = [LatticeVector.of([1, 0]), LatticeVector.of([0, 1])]
    result = unique_interpolant(xs, ys)
    if result.interpolant is not None:
        _print_matrix("Unique T with T x_j = y_j", result.interpolant)
    checks = [
        _check("interpolant exists and is unique", result.interpolant is not None),
        _check("interpolant is NOT positive", not result.positive),
    ]
    try:
        interpolate_positive(xs, ys)
        checks.append(_check("non-disjoint sources rejected", False))
    except LatticeToolkitError as e:
        checks.append(_check(f"non-disjoint sources rejected ({type(e).__name__})", True))

    atoms = [LatticeVector.atom(2, 0), LatticeVector.atom(2, 1)]
    t = interpolate_positive(atoms, ys)
    checks.append(
        _check(
            "disjoint sources admit a positive interpolant",
            all(t.apply(x.entries) == y.entries for x, y in zip(atoms, ys)),
        )
    )
    return all(checks)


def _verify_dichotomy() -> bool:
    result = verify_2x2_dichotomy()
    console.print(f"Grid values: {result.grid_values}", highlight=False)
    console.print(f"Pairs enumerated: {result.enumerated}", highlight=False)
    console.print(f"Pairs with AB >= BA >= 0: {result.accepted}", highlight=False)
    console.print(f"  commuting: {result.commuting}", highlight=False)
    console.print(f"  completely decomposable: {result.decomposable}", highlight=False)
    for v in result.violations[:5]:
        console.print(
            f"[red]Counterexample at {v.attempt}[/red]: a={escape(str(v.a.entries))} b={escape(str(v.b.entries))}"
        )
    return _check("no violations", not result.violations)


@app.command("verify-example")
def verify_example(
    name: ExampleName = typer.Argument(..., help="1, 2, exam1 or 2x2-dichotomy"),
):
    """Reproduce a fixed example exactly."""
    runners = {
        ExampleName.ONE: _verify_example1,
        ExampleName.TWO: _verify_example2,
        ExampleName.EXAM1: _verify_exam1,
        ExampleName.DICHOTOMY: _verify_dichotomy,
    }
    console.print(f"[bold cyan]Example {name.value}[/bold cyan]")
    if not runners[name]():
        raise typer.Exit(EXIT_MATH)


# ============================================================================
# check-pair
# ============================================================================


def _check_corpus(path: Path) -> int:
    mismatched = 0
    checked = 0
    for line_no, record in read_corpus(path):
        checked += 1
        diff = reclassify(record)
        if diff:
            mismatched += 1
            console.print(f"[red]Line {line_no}: report differs[/red] {escape(str(diff))}", highlight=False)
    console.print(f"Re-classified {checked} corpus lines, {mismatched} mismatches")
    return mismatched


@app.command("check-pair")
def check_pair(
    path: Path = typer.Argument(..., help="Pair JSON ({'a': ..., 'b': ...}) or .jsonl corpus"),
    json_out: Optional[Path] = typer.Option(None, "--json", help="Write the report as JSON"),
):
    """Classify a pair, or re-verify every line of a campaign corpus."""
    try:
        if path.suffix == ".jsonl":
            if _check_corpus(path):
                raise typer.Exit(EXIT_MATH)
            return
        pair = PairModel.model_validate(_read_json(path))
        a, b = pair.to_pair()
        report = classify_pair(a, b)
    except ValidationError as e:
        raise _fail_usage(f"Invalid pair file {path}: {e}")
    except LatticeToolkitError as e:
        raise _fail_error(e, json_out)

    console.print(_report_table(report))
    console.print(_verdict(report))
    _write_json(json_out, report.model_dump(mode="json"))

    # invariants that must hold whenever the hypothesis does
    if report.hypothesis and (
        not report.commutator_nilpotent or report.radical_member != report.oracle_member
    ):
        console.print("[red]Pair satisfies AB >= BA >= 0 but violates an invariant[/red]")
        raise typer.Exit(EXIT_MATH)


# ============================================================================
# search
# ============================================================================


@app.command()
def search(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="SamplerConfig JSON file"),
    seed: int = typer.Option(..., "--seed", min=0, help="Campaign seed (required)"),
    goal: Optional[List[Goal]] = typer.Option(None, "--goal", "-g", help="Goal to check (repeatable)"),
    corpus: Optional[Path] = typer.Option(None, "--corpus", help="JSONL corpus path"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker processes"),
    json_out: Optional[Path] = typer.Option(None, "--json", help="Write the campaign summary"),
):
    """Sample pairs and check campaign goals; every pair goes to the corpus."""
    settings: Settings = ctx.obj or Settings()
    try:
        text = config.read_text(encoding="utf-8")
    except OSError as e:
        raise _fail_usage(f"Cannot read {config}: {e}")
    try:
        cfg = SamplerConfig.from_json(text).with_seed(seed)
        if cfg.attempt_count() > settings.max_attempts:
            raise _fail_usage(
                f"{cfg.attempt_count()} attempts exceed POSCOMM_MAX_ATTEMPTS={settings.max_attempts}"
            )
        goals = goal or list(Goal)
        summary = run_campaign(
            cfg,
            goals,
            corpus_path=corpus or settings.corpus_path,
            workers=workers or settings.workers,
        )
    except LatticeToolkitError as e:
        raise _fail_error(e, json_out)

    table = Table(title=f"Campaign {cfg.strategy.value} (seed {seed})")
    table.add_column("Goal", style="cyan")
    table.add_column("Checked", justify="right")
    for name, count in summary.goal_checks.items():
        table.add_row(name, str(count))
    console.print(table)
    console.print(
        f"Accepted {summary.accepted}/{summary.attempts} attempts; "
        f"{len(summary.violations)} violations; corpus: {summary.corpus_path}"
    )
    _write_json(json_out, summary.model_dump(mode="json"))

    if not summary.ok:
        for v in summary.violations:
            console.print(f"[red]{v.check}[/red] at attempt {v.attempt}: {escape(v.model_dump_json())}")
        raise typer.Exit(EXIT_MATH)


# ============================================================================
# volterra / donoghue
# ============================================================================


def _emit_csv(rows: list[tuple[int, float]], header: tuple[str, str], out: Optional[Path], name: str):
    buffer = io.StringIO()
    write_csv(rows, header, buffer)
    if out is None:
        console.print(buffer.getvalue(), end="", highlight=False, soft_wrap=True)
        return
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(buffer.getvalue(), encoding="utf-8")
    except OSError as e:
        raise _fail_usage(f"Cannot write {out / name}: {e}")
    console.print(f"Wrote {out / name}")


@app.command()
def volterra(
    n: int = typer.Argument(..., min=2, help="Grid cells"),
    kmax: Optional[int] = typer.Option(None, "--kmax", help="Gelfand powers (default n)"),
    out: Optional[Path] = typer.Option(None, "--out", help="Directory for CSV files"),
):
    """Gelfand decay, commutator defect sweep and chain check for V_n and M_n."""
    v = volterra_matrix(n)
    estimates = gelfand_estimate(v, kmax or n)
    _emit_csv(list(enumerate(estimates, start=1)), ("k", "value"), out, f"volterra_gelfand_{n}.csv")

    sizes = [m for m in (2, 4, 8, 16, 32, 64, 128, 256) if m <= n] or [n]
    defects = [(m, commutator_defect(m)) for m in sizes]
    _emit_csv(defects, ("n", "value"), out, f"volterra_defect_{n}.csv")

    checks = [
        nilpotency_index(v) == n,
        volterra_chain_check(n, [i / 8 for i in range(9)]),
    ]
    if not all(checks):
        console.print("[red]Volterra discretization check failed[/red]")
        raise typer.Exit(EXIT_MATH)


@app.command()
def donoghue(
    k: int = typer.Argument(..., min=1, help="Truncation order (matrix size k+1)"),
    weights: Optional[Path] = typer.Option(None, "--weights", help="JSON list of weights"),
    kmax: Optional[int] = typer.Option(None, "--kmax", help="Gelfand powers (default k+1)"),
    out: Optional[Path] = typer.Option(None, "--out", help="Directory for CSV files"),
):
    """Gelfand decay and invariant-chain checks for the truncated Donoghue operator."""
    try:
        if weights is None:
            w = WeightSequence.dyadic(k)
        else:
            w = WeightSequence(weights=TypeAdapter(list[float]).validate_python(_read_json(weights)))
        s = donoghue_matrix(k, w)
    except ValidationError as e:
        raise _fail_usage(f"Invalid weights: {e}")
    except LatticeToolkitError as e:
        raise _fail_usage(e.message)

    estimates = gelfand_estimate(s, kmax or k + 1)
    _emit_csv(list(enumerate(estimates, start=1)), ("k", "value"), out, f"donoghue_gelfand_{k}.csv")

    checks = [donoghue_shift_check(k, w), all(c == "c" for c in donoghue_chain_cases(k, w))]
    if k <= MAX_ENUMERATION:
        checks.append(donoghue_chain_check(k, w))
    else:
        logger.info("Skipping exhaustive chain enumeration for k=%s", k)
    if not all(checks):
        console.print("[red]Donoghue truncation check failed[/red]")
        raise typer.Exit(EXIT_MATH)


# ============================================================================
# radical
# ============================================================================

_TOKEN = re.compile(r"\s*(?:(g\d+)|(I)|(\d+(?:/\d+)?)|([+\-*]))")


def parse_element(expr: str, generators: list[RationalMatrix]) -> RationalMatrix:
    """
    Evaluate a noncommutative polynomial in the generators.

    Grammar: sum of terms joined by + or -, each term a product of factors
    joined by *, each factor g<i> (generator i), I, or a rational p/q.
    Example: "g0*g1 - g1*g0".
    """
    tokens: list[str] = []
    pos = 0
    stripped = expr.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match:
            raise ValueError(f"Unexpected input at position {pos}: {stripped[pos:]!r}")
        tokens.append(next(group for group in match.groups() if group))
        pos = match.end()
    if not tokens:
        raise ValueError("Empty element expression")

    n = generators[0].rows
    total = RationalMatrix.zero(n)
    sign = 1
    term: RationalMatrix | None = None
    expect_factor = True
    for tok in tokens + ["+"]:
        if tok in "+-" and not expect_factor:
            total = total + term.scale(sign)  # type: ignore[union-attr]
            sign, term, expect_factor = (1 if tok == "+" else -1), None, True
        elif tok in "+-":
            sign = sign * (1 if tok == "+" else -1)
        elif tok == "*":
            if expect_factor:
                raise ValueError("'*' must follow a factor")
            expect_factor = True
        else:
            if not expect_factor:
                raise ValueError(f"Missing operator before {tok!r}")
            if tok == "I":
                factor = RationalMatrix.identity(n)
            elif tok.startswith("g"):
                index = int(tok[1:])
                if index >= len(generators):
                    raise ValueError(f"Generator {tok} out of range (have {len(generators)})")
                factor = generators[index]
            else:
                factor = RationalMatrix.identity(n).scale(Fraction(tok))
            term = factor if term is None else term @ factor
            expect_factor = False
    if expect_factor:
        raise ValueError("Expression ends with an operator")
    return total


def _load_algebra(path: Path) -> MatrixAlgebra:
    payload = _read_json(path)
    try:
        if isinstance(payload, list):
            gens = [MatrixModel.model_validate(m).to_matrix() for m in payload]
            return generate_algebra(gens, unitized=True)
        if isinstance(payload, dict) and "a" in payload and "b" in payload:
            return generate_algebra(list(PairModel.model_validate(payload).to_pair()), unitized=True)
        return AlgebraDump.model_validate(payload).to_algebra()
    except ValidationError as e:
        raise _fail_usage(f"Invalid algebra file {path}: {e}")


class RadicalReport(BaseModel):
    element: MatrixModel
    algebra_dim: int
    gram_rank: int
    member: bool
    oracle_member: bool
    witness: MatrixModel | None = None
    witness_trace: str | None = None


@app.command()
def radical(
    path: Path = typer.Argument(..., help="Generator list, pair or algebra dump JSON"),
    element: str = typer.Option(..., "--element", "-e", help='Element, e.g. "g0*g1 - g1*g0"'),
    expect: Optional[Expectation] = typer.Option(None, "--expect", help="Assert the verdict"),
    json_out: Optional[Path] = typer.Option(None, "--json", help="Write the verdict as JSON"),
):
    """Decide radical membership of an element of a generated algebra."""
    try:
        alg = _load_algebra(path)
        x = parse_element(element, list(alg.generators))
        certificate = radical_membership(alg, x)
        oracle = radical_membership_oracle(alg, x)
    except (ValueError, ZeroDivisionError) as e:
        raise _fail_usage(f"Bad --element: {e}")
    except LatticeToolkitError as e:
        raise _fail_error(e, json_out)

    report = RadicalReport(
        element=MatrixModel.from_matrix(x),
        algebra_dim=alg.dimension,
        gram_rank=certificate.gram_rank,
        member=certificate.member,
        oracle_member=oracle,
        witness=MatrixModel.from_matrix(certificate.witness) if certificate.witness else None,
        witness_trace=str(certificate.witness_trace) if certificate.witness_trace is not None else None,
    )
    _print_matrix("Element", x)
    console.print(f"Algebra dimension: {alg.dimension}, Gram rank: {certificate.gram_rank}")
    console.print(f"Verdict: {'member' if certificate.member else 'non-member'}")
    _write_json(json_out, report.model_dump(mode="json"))

    if certificate.member != oracle:
        console.print("[red]Trace-form and nil-ideal tests disagree[/red]")
        raise typer.Exit(EXIT_MATH)
    if expect is not None and (expect == Expectation.MEMBER) != certificate.member:
        console.print(f"[red]Expected {expect.value}[/red]")
        raise typer.Exit(EXIT_MATH)


@app.command()
def version():
    """Show version information."""
    console.print("[bold]Positive Commutator Toolkit[/bold]")
    console.print(f"Version: [cyan]{__version__}[/cyan]")
    console.print()
    console.print(f"Repository: [dim]{CLI_ROOT}[/dim]")


# ============================================================================
# Main Entry Point
# ============================================================================

if __name__ == "__main__":
    app()
