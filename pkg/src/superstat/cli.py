"""Command-line interface for superstat."""

from __future__ import annotations

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import TypeVar

import typer
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler

from . import special, thermo
from .config import Config
from .errors import ConsistencyError, SuperstatError
from .fock import SUITES, fock_basis, verify_suite
from .formats import emit, samples_csv, sweep_csv, write_artifact
from .models import (
    DegenerateRoute,
    DimensionReport,
    EquidistantRoute,
    FockSpec,
    GpfReport,
    GridSpec,
    OutputFormat,
    Route,
    SamplerConfig,
    SamplingMethod,
    ThermoParams,
    ThermoReport,
    to_canonical_json,
)
from .sampler import draw_samples, estimate
from .storage.filesystem import FileSystemStorage

# Exit codes
EXIT_OK = 0
EXIT_VALIDATION_ERROR = 1
EXIT_BAD_USAGE = 2
EXIT_IO_ERROR = 4

app = typer.Typer(
    help="A-superstatistics: sl(1|n) Fock modules and grand canonical averages.",
    no_args_is_help=True,
)
console = Console(stderr=True)
logger = logging.getLogger(__name__)

RouteT = TypeVar("RouteT", bound=Enum)

METHOD_ALIASES = {
    "exact": SamplingMethod.EXACT_CATEGORICAL,
    "exact_categorical": SamplingMethod.EXACT_CATEGORICAL,
    "metropolis": SamplingMethod.METROPOLIS,
}


@dataclass
class CliState:
    config: Config
    fmt: OutputFormat
    exact: bool


def _state(ctx: typer.Context) -> CliState:
    state = ctx.obj
    assert isinstance(state, CliState)
    return state


def _configure_logging(level: str, fmt: str) -> None:
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(level=level, format=fmt, handlers=[handler], force=True)


@app.callback()
def main(
    ctx: typer.Context,
    fmt: OutputFormat = typer.Option(
        OutputFormat.JSON, "--format", help="Artifact format"
    ),
    exact: bool = typer.Option(
        False, "--exact", help="Parse numbers as exact rationals"
    ),
    config_path: Path | None = typer.Option(
        None, "--config", help="TOML configuration (default: ./superstat.toml)"
    ),
    verbose: bool = typer.Option(False, "--verbose", help="Log at DEBUG level"),
) -> None:
    """Global options shared by every subcommand."""
    try:
        config = Config(config_path)
        _configure_logging("DEBUG" if verbose else config.log_level, config.log_format)
    except ValueError as e:
        console.print(f"[red]Configuration error: {e}[/red]")
        raise typer.Exit(EXIT_BAD_USAGE) from e
    ctx.obj = CliState(config=config, fmt=fmt, exact=exact)


@contextmanager
def _handle_errors(action: str) -> Iterator[None]:
    """Map library errors onto exit codes."""
    try:
        yield
    except typer.Exit:
        # Re-raise typer.Exit exceptions (preserve exit codes)
        raise
    except ConsistencyError as e:
        console.print(f"[red]Failed to {action}: {e}[/red]")
        raise typer.Exit(EXIT_VALIDATION_ERROR) from e
    except (SuperstatError, ValueError) as e:
        console.print(f"[red]Failed to {action}: {e}[/red]")
        raise typer.Exit(EXIT_BAD_USAGE) from e
    except OSError as e:
        console.print(f"[red]Failed to {action}: {e}[/red]")
        raise typer.Exit(EXIT_IO_ERROR) from e


def _output(state: CliState, report: BaseModel, output: Path | None) -> None:
    text = emit(report, state.fmt, output)
    if output is None:
        typer.echo(text, nl=False)
    else:
        console.print(f"[green]Wrote {output}[/green]")


def parse_numbers(text: str, flag: str, *, exact: bool) -> list[Fraction | float]:
    """Comma-separated numbers; rationals such as 1/3 or 0.5 in exact mode."""
    values: list[Fraction | float] = []
    for item in text.split(","):
        item = item.strip()
        try:
            values.append(Fraction(item) if exact else float(Fraction(item)))
        except (ValueError, ZeroDivisionError) as e:
            raise typer.BadParameter(f"Not a number: {item!r}", param_hint=flag) from e
    return values


def _parse_route(enum: type[RouteT], value: str | None, default: RouteT) -> RouteT:
    if value is None:
        return default
    try:
        return enum(value)
    except ValueError as e:
        choices = ", ".join(m.value for m in enum)
        raise typer.BadParameter(
            f"{value!r} is not one of {choices}", param_hint="--route"
        ) from e


@dataclass
class ParamOptions:
    """Raw parameter flags of gpf / averages before mode resolution."""

    p: int
    fugacities: str | None
    tau: float | None
    mu: str | None
    epsilon: str | None
    degenerate: bool
    equidistant: bool
    x: str | None
    q: str | None
    n: int | None
    epsilon1: float | None
    delta: float | None


def _broadcast(values: list, n: int, flag: str) -> list:
    if len(values) == 1:
        return values * n
    if len(values) != n:
        raise typer.BadParameter(f"Expected 1 or {n} values", param_hint=flag)
    return values


def resolve_params(
    opts: ParamOptions, *, exact: bool
) -> ThermoParams | special.DegenerateParams | special.EquidistantParams:
    """Turn the mutually exclusive parameter modes into one params model.

    Physical flags are converted to fugacities here; the library only sees
    fugacities (or x and q for the special families).
    """
    modes = [
        opts.fugacities is not None,
        opts.epsilon is not None,
        opts.degenerate,
        opts.equidistant,
    ]
    if sum(modes) != 1:
        raise typer.BadParameter(
            "Give exactly one of --fugacities, --epsilon, --degenerate, "
            "--equidistant"
        )

    if opts.fugacities is not None:
        return ThermoParams(
            p=opts.p,
            fugacities=tuple(
                parse_numbers(opts.fugacities, "--fugacities", exact=exact)
            ),
        )

    if opts.epsilon is not None:
        if opts.tau is None or opts.mu is None:
            raise typer.BadParameter("--epsilon needs --tau and --mu")
        energies = parse_numbers(opts.epsilon, "--epsilon", exact=exact)
        mus = _broadcast(
            parse_numbers(opts.mu, "--mu", exact=exact), len(energies), "--mu"
        )
        return ThermoParams(
            p=opts.p,
            energies=tuple(energies),
            chemical_potentials=tuple(mus),
            temperature=opts.tau,
        )

    if opts.n is None:
        raise typer.BadParameter("The special families need --n", param_hint="--n")

    if opts.degenerate:
        if opts.x is None:
            raise typer.BadParameter("--degenerate needs --x", param_hint="--x")
        (x,) = parse_numbers(opts.x, "--x", exact=exact)
        return special.DegenerateParams(p=opts.p, n=opts.n, x=x)

    if opts.epsilon1 is not None or opts.delta is not None:
        if None in (opts.epsilon1, opts.delta, opts.mu, opts.tau):
            raise typer.BadParameter(
                "Physical equidistant mode needs --epsilon1 --delta --mu --tau"
            )
        assert opts.epsilon1 is not None and opts.delta is not None
        assert opts.mu is not None and opts.tau is not None
        (mu,) = parse_numbers(opts.mu, "--mu", exact=False)
        return special.EquidistantParams.from_physical(
            opts.p, opts.n, opts.epsilon1, opts.delta, float(mu), opts.tau
        )
    if opts.x is None or opts.q is None:
        raise typer.BadParameter("--equidistant needs --x and --q")
    (x,) = parse_numbers(opts.x, "--x", exact=exact)
    (q,) = parse_numbers(opts.q, "--q", exact=exact)
    return special.EquidistantParams(p=opts.p, n=opts.n, x=x, q=q)


# Parameter flags shared by gpf and averages
P_OPT = typer.Option(..., "--p", help="Order of statistics")
FUGACITIES_OPT = typer.Option(None, "--fugacities", help="x_1,...,x_n")
TAU_OPT = typer.Option(None, "--tau", help="Temperature (energy units)")
MU_OPT = typer.Option(None, "--mu", help="Chemical potential(s)")
EPSILON_OPT = typer.Option(None, "--epsilon", help="Orbital energies")
DEGENERATE_OPT = typer.Option(False, "--degenerate", help="Equal fugacities x")
EQUIDISTANT_OPT = typer.Option(False, "--equidistant", help="Fugacities x q^(i-1)")
X_OPT = typer.Option(None, "--x", help="Fugacity of the (lowest) orbital")
Q_OPT = typer.Option(None, "--q", help="Ratio exp(-delta / tau)")
N_OPT = typer.Option(None, "--n", help="Number of orbitals")
EPSILON1_OPT = typer.Option(None, "--epsilon1", help="Lowest equidistant level")
DELTA_OPT = typer.Option(None, "--delta", help="Equidistant level spacing")
ROUTE_OPT = typer.Option(None, "--route", help="Computation route")
OUTPUT_OPT = typer.Option(None, "--output", help="Write the artifact to PATH")


@app.command()
def verify(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p", help="Order of statistics"),
    n: int = typer.Option(..., "--n", help="Number of orbitals"),
    suite: str = typer.Option("all", "--suite", help="|".join(SUITES)),
    output: Path | None = OUTPUT_OPT,
) -> None:
    """Verify the sl(1|n) operator identities on W(p, n)."""
    state = _state(ctx)
    with _handle_errors("verify"):
        if suite not in SUITES:
            raise typer.BadParameter(
                f"{suite!r} is not one of {', '.join(SUITES)}", param_hint="--suite"
            )
        report = verify_suite(
            FockSpec(p=p, n=n),
            suite,
            tolerance=state.config.float_tolerance,
            cap=state.config.enumeration_cap,
        )
        _output(state, report, output)
        if not report.passed:
            raise typer.Exit(EXIT_VALIDATION_ERROR)


@app.command()
def dims(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p", help="Order of statistics"),
    n: int = typer.Option(..., "--n", help="Number of orbitals"),
    output: Path | None = OUTPUT_OPT,
) -> None:
    """Dimension of W(p, n), enumerated when n is small enough."""
    state = _state(ctx)
    with _handle_errors("compute dimension"):
        spec = FockSpec(p=p, n=n)
        cap = state.config.enumeration_cap
        enumerated = n <= cap
        dimension = len(fock_basis(spec, cap=cap)) if enumerated else spec.dimension
        if dimension != spec.dimension:
            raise ConsistencyError(
                f"Enumerated {dimension} states, binomial sum gives {spec.dimension}"
            )
        report = DimensionReport(
            p=p,
            n=n,
            dimension=dimension,
            typical=spec.typical,
            enumerated=enumerated,
        )
        _output(state, report, output)


def _gpf_report(
    params: ThermoParams | special.DegenerateParams | special.EquidistantParams,
    route: str | None,
    config: Config,
) -> GpfReport:
    if isinstance(params, special.DegenerateParams):
        deg = _parse_route(DegenerateRoute, route, DegenerateRoute.DIRECT)
        z = special.degenerate_gpf(params, deg)
        return GpfReport(p=params.p, n=params.n, route=deg.value, Z=z)
    if isinstance(params, special.EquidistantParams):
        eq = _parse_route(EquidistantRoute, route, EquidistantRoute.QBINOMIAL)
        z = special.equidistant_gpf(params, eq)
        return GpfReport(p=params.p, n=params.n, route=eq.value, Z=z)
    r = _parse_route(Route, route, Route.SYMFUN)
    if r is Route.BRUTEFORCE:
        z = thermo.gpf_bruteforce(
            params, cap=config.bruteforce_cap, exact_cap=config.exact_cap
        )
    elif r is Route.CLOSED_FORM:
        z = _thermo(params, r, config).Z
    else:
        z = thermo.gpf(params, exact_cap=config.exact_cap)
    return GpfReport(p=params.p, n=params.n, route=r.value, Z=z)


def _thermo(
    params: ThermoParams, route: Route, config: Config, probabilities: bool = False
) -> ThermoReport:
    return thermo.thermo_report(
        params,
        route,
        include_probabilities=probabilities,
        exact_cap=config.exact_cap,
        bruteforce_cap=config.bruteforce_cap,
    )


def _averages_report(
    params: ThermoParams | special.DegenerateParams | special.EquidistantParams,
    route: str | None,
    config: Config,
    probabilities: bool,
) -> ThermoReport:
    if isinstance(params, special.DegenerateParams):
        deg = _parse_route(DegenerateRoute, route, DegenerateRoute.DIRECT)
        nbar, theta = special.degenerate_averages(params)
        return ThermoReport(
            p=params.p,
            n=params.n,
            route=Route.CLOSED_FORM,
            clamped=params.p > params.n,
            Z=special.degenerate_gpf(params, deg),
            Nbar=nbar,
            theta_bar=[theta] * params.n,
        )
    if isinstance(params, special.EquidistantParams):
        eq = _parse_route(EquidistantRoute, route, EquidistantRoute.QBINOMIAL)
        nbar, thetas = special.equidistant_averages(params)
        return ThermoReport(
            p=params.p,
            n=params.n,
            route=Route.CLOSED_FORM,
            clamped=params.p > params.n,
            Z=special.equidistant_gpf(params, eq),
            Nbar=nbar,
            theta_bar=list(thetas),
        )
    r = _parse_route(Route, route, Route.SYMFUN)
    return _thermo(params, r, config, probabilities)


@app.command()
def gpf(
    ctx: typer.Context,
    p: int = P_OPT,
    fugacities: str | None = FUGACITIES_OPT,
    tau: float | None = TAU_OPT,
    mu: str | None = MU_OPT,
    epsilon: str | None = EPSILON_OPT,
    degenerate: bool = DEGENERATE_OPT,
    equidistant: bool = EQUIDISTANT_OPT,
    x: str | None = X_OPT,
    q: str | None = Q_OPT,
    n: int | None = N_OPT,
    epsilon1: float | None = EPSILON1_OPT,
    delta: float | None = DELTA_OPT,
    route: str | None = ROUTE_OPT,
    output: Path | None = OUTPUT_OPT,
) -> None:
    """Grand partition function Z(p, n)."""
    state = _state(ctx)
    with _handle_errors("compute Z"):
        opts = ParamOptions(
            p=p,
            fugacities=fugacities,
            tau=tau,
            mu=mu,
            epsilon=epsilon,
            degenerate=degenerate,
            equidistant=equidistant,
            x=x,
            q=q,
            n=n,
            epsilon1=epsilon1,
            delta=delta,
        )
        params = resolve_params(opts, exact=state.exact)
        _output(state, _gpf_report(params, route, state.config), output)


@app.command()
def averages(
    ctx: typer.Context,
    p: int = P_OPT,
    fugacities: str | None = FUGACITIES_OPT,
    tau: float | None = TAU_OPT,
    mu: str | None = MU_OPT,
    epsilon: str | None = EPSILON_OPT,
    degenerate: bool = DEGENERATE_OPT,
    equidistant: bool = EQUIDISTANT_OPT,
    x: str | None = X_OPT,
    q: str | None = Q_OPT,
    n: int | None = N_OPT,
    epsilon1: float | None = EPSILON1_OPT,
    delta: float | None = DELTA_OPT,
    route: str | None = ROUTE_OPT,
    probabilities: bool = typer.Option(
        False, "--probabilities", help="Include per-state Gibbs probabilities"
    ),
    sweep: str | None = typer.Option(
        None, "--sweep", help="Temperature grid START:STOP:NUM (physical mode)"
    ),
    output: Path | None = OUTPUT_OPT,
) -> None:
    """Average particle number, occupancies and energy."""
    state = _state(ctx)
    with _handle_errors("compute averages"):
        opts = ParamOptions(
            p=p,
            fugacities=fugacities,
            tau=tau,
            mu=mu,
            epsilon=epsilon,
            degenerate=degenerate,
            equidistant=equidistant,
            x=x,
            q=q,
            n=n,
            epsilon1=epsilon1,
            delta=delta,
        )
        if sweep is not None:
            _run_sweep(state, opts, sweep, route, output)
            return
        params = resolve_params(opts, exact=state.exact)
        report = _averages_report(params, route, state.config, probabilities)
        _output(state, report, output)


def _run_sweep(
    state: CliState,
    opts: ParamOptions,
    grid_text: str,
    route: str | None,
    output: Path | None,
) -> None:
    if opts.epsilon is None:
        raise typer.BadParameter("--sweep needs --epsilon, --mu", param_hint="--sweep")
    temperatures = GridSpec.parse(grid_text).points()
    opts.tau = opts.tau or temperatures[0]
    params = resolve_params(opts, exact=False)
    assert isinstance(params, ThermoParams)
    reports = thermo.sweep(
        params,
        temperatures,
        _parse_route(Route, route, Route.SYMFUN),
        exact_cap=state.config.exact_cap,
        bruteforce_cap=state.config.bruteforce_cap,
    )
    if state.fmt is OutputFormat.CSV:
        text = sweep_csv(temperatures, reports)
    else:
        text = to_canonical_json(reports) + "\n"
    if output is None:
        typer.echo(text, nl=False)
    else:
        write_artifact(output, text)
        console.print(f"[green]Wrote {output}[/green]")


@app.command()
def figure(
    ctx: typer.Context,
    figure_id: int = typer.Option(..., "--id", help="Figure 1, 2 or 3"),
    grid: str | None = typer.Option(None, "--grid", help="START:STOP:NUM"),
    out: Path = typer.Option(..., "--out", help="Output directory"),
) -> None:
    """Write fig<ID>.csv and fig<ID>.json with the data behind a figure."""
    state = _state(ctx)
    with _handle_errors("generate figure"):
        config = state.config
        if grid is not None:
            spec = GridSpec.parse(grid)
        else:
            spec = config.q_grid if figure_id == 3 else config.y_grid
        series = special.figure_data(
            figure_id, spec, fig3_y=config.fig3_y, q_tol=config.q_tol
        )
        storage = FileSystemStorage(out)
        for fmt in (OutputFormat.CSV, OutputFormat.JSON):
            path = storage.save_text(
                f"fig{figure_id}.{fmt.value}", emit(series, fmt)
            )
            console.print(f"[green]Wrote {path}[/green]")


@app.command()
def sample(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p", help="Order of statistics"),
    n: int = typer.Option(..., "--n", help="Number of orbitals"),
    fugacities: str = typer.Option(
        ..., "--fugacities", help="x_1,...,x_n (one value is repeated n times)"
    ),
    count: int = typer.Option(..., "--count", help="Draws or Metropolis steps"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    method: str | None = typer.Option(
        None, "--method", help="exact | metropolis"
    ),
    energies: str | None = typer.Option(
        None, "--energies", help="Orbital energies, to estimate E"
    ),
    burn_in: int | None = typer.Option(None, "--burn-in", help="Discarded steps"),
    thinning: int | None = typer.Option(None, "--thinning", help="Keep every k-th"),
    chains: int = typer.Option(1, "--chains", help="Independent chains"),
    dump: Path | None = typer.Option(None, "--dump", help="Raw samples CSV"),
    output: Path | None = OUTPUT_OPT,
) -> None:
    """Sample the Gibbs distribution and estimate the averages."""
    state = _state(ctx)
    config = state.config
    with _handle_errors("sample"):
        if method is None:
            chosen = config.sampler_method
        elif method in METHOD_ALIASES:
            chosen = METHOD_ALIASES[method]
        else:
            raise typer.BadParameter(
                f"{method!r} is not one of exact, metropolis", param_hint="--method"
            )
        xs = _broadcast(
            parse_numbers(fugacities, "--fugacities", exact=False), n, "--fugacities"
        )
        eps = None
        if energies is not None:
            eps = tuple(
                _broadcast(
                    parse_numbers(energies, "--energies", exact=False), n, "--energies"
                )
            )
        sampler_config = SamplerConfig(
            params=ThermoParams(p=p, fugacities=tuple(xs), energies=eps),
            count=count,
            seed=config.sampler_seed if seed is None else seed,
            method=chosen,
            burn_in=config.sampler_burn_in if burn_in is None else burn_in,
            thinning=config.sampler_thinning if thinning is None else thinning,
            chains=chains,
            blocks=config.sampler_blocks,
        )
        draws = draw_samples(sampler_config, cap=config.bruteforce_cap)
        if dump is not None:
            write_artifact(dump, samples_csv(draws.states))
            console.print(f"[green]Wrote {dump}[/green]")
        _output(state, estimate(draws, sampler_config), output)


if __name__ == "__main__":
    app()
