"""Command-line entry point."""

import json
from typing import Any, Callable

import click

from app.config import Settings, get_settings
from app.errors import ParseError
from app.logging_config import configure_logging
from app.services.runner import EXIT_ERROR, CommandRunner, RunConfig


def _spec_option(f: Callable) -> Callable:
    return click.option("--spec", "spec_path", type=click.Path(dir_okay=False), help="ActionSpec JSON file")(f)


def _output_options(f: Callable) -> Callable:
    f = click.option("--json", "as_json", is_flag=True, default=False, help="JSON output (default)")(f)
    f = click.option("--text", "as_text", is_flag=True, default=False, help="key: value output")(f)
    return f


def _budget_option(f: Callable) -> Callable:
    return click.option("--budget", type=int, default=None, help="vertex budget")(f)


def _base_option(multiple: bool = False) -> Callable:
    return click.option(
        "--base",
        multiple=multiple,
        default=() if multiple else None,
        help="base point as JSON (bare strings accepted for free-group words)",
    )


def _execute(ctx: click.Context, command: str, **values: Any) -> None:
    settings: Settings = ctx.obj["settings"]
    as_text = values.pop("as_text", False)
    values.pop("as_json", None)
    base = values.pop("base", None)
    if base is not None:
        values["base"] = [base] if isinstance(base, str) else list(base)
    values["output_format"] = "text" if as_text else "json"
    try:
        config = RunConfig.from_settings(settings, command=command, **values)
    except ParseError as exc:
        click.echo(json.dumps(exc.to_dict(), indent=2))
        ctx.exit(EXIT_ERROR)
    result = CommandRunner(settings).run(config)
    click.echo(result.render(config.output_format))
    ctx.exit(result.exit_code)


@click.group()
@click.option("--log-level", default=None, help="override LOG_LEVEL")
@click.option("--log-format", type=click.Choice(["text", "json"]), default=None, help="override LOG_FORMAT")
@click.pass_context
def cli(ctx: click.Context, log_level: str, log_format: str) -> None:
    """Equidecomposition toolkit for finitely generated group actions."""
    settings = get_settings()
    overrides = {k: v for k, v in (("log_level", log_level), ("log_format", log_format)) if v is not None}
    if overrides:
        settings = settings.model_copy(update=overrides)
    configure_logging(settings)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings


@cli.command()
@_spec_option
@_base_option()
@_budget_option
@click.option("--max-depth", type=int, default=None)
@click.option("--subgroup", default=None, help="JSON list of words generating H")
@_output_options
@click.pass_context
def orbit(ctx: click.Context, **values: Any) -> None:
    """Bounded BFS of one orbit."""
    _execute(ctx, "orbit", **values)


@cli.command()
@_spec_option
@_base_option(multiple=True)
@_budget_option
@click.option("--subgroup", default=None, help="JSON list of words generating H")
@_output_options
@click.pass_context
def locfin(ctx: click.Context, **values: Any) -> None:
    """Finite or Unknown for each base point (all points of a finite universe by default)."""
    _execute(ctx, "locfin", **values)


@cli.command("find-ray")
@_spec_option
@_base_option()
@_budget_option
@click.option("--length", type=int, default=None)
@click.option("--seed", type=int, default=None)
@_output_options
@click.pass_context
def find_ray(ctx: click.Context, **values: Any) -> None:
    """Geodesic ray of the given length from the base point."""
    _execute(ctx, "find-ray", **values)


@cli.command("certify-ray")
@_spec_option
@click.option("--ray", "ray_path", type=click.Path(dir_okay=False), help="GeodesicRay JSON file")
@click.option("--rooted", is_flag=True, default=False)
@_output_options
@click.pass_context
def certify_ray(ctx: click.Context, **values: Any) -> None:
    """Ray certificate from a geodesic ray."""
    _execute(ctx, "certify-ray", **values)


@cli.command()
@_spec_option
@_base_option()
@_budget_option
@click.option("--length", type=int, default=None)
@click.option("--seed", type=int, default=None)
@_output_options
@click.pass_context
def classify(ctx: click.Context, **values: Any) -> None:
    """ray, finite or unknown for one base point."""
    _execute(ctx, "classify", **values)


@cli.command()
@_spec_option
@click.option("--cert", "cert_path", type=click.Path(dir_okay=False))
@_base_option()
@_budget_option
@click.option("--window-radius", type=int, default=None)
@_output_options
@click.pass_context
def verify(ctx: click.Context, **values: Any) -> None:
    """Verify a finite, ray or extended certificate."""
    _execute(ctx, "verify", **values)


@cli.command()
@_spec_option
@click.option("--source", default=None, help="JSON list of points")
@click.option("--target", default=None, help="JSON list of points")
@click.option("--max-word-len", type=int, default=None)
@_budget_option
@_output_options
@click.pass_context
def match(ctx: click.Context, **values: Any) -> None:
    """Decide A ~ B by bipartite matching."""
    _execute(ctx, "match", **values)


@cli.command("brute-pieces")
@_spec_option
@click.option("--source", default=None, help="JSON list of points")
@click.option("--target", default=None, help="JSON list of points")
@click.option("--max-word-len", type=int, default=None)
@click.option("--max-pieces", type=int, default=None)
@_output_options
@click.pass_context
def brute_pieces(ctx: click.Context, **values: Any) -> None:
    """Decide A ~ B by exhaustive search over piece assignments."""
    _execute(ctx, "brute-pieces", **values)


@cli.command()
@_spec_option
@click.option("--cert", "cert_path", type=click.Path(dir_okay=False))
@_output_options
@click.pass_context
def extend(ctx: click.Context, **values: Any) -> None:
    """Extend a certificate with target inside source to the whole set."""
    _execute(ctx, "extend", **values)


@cli.command("roe-witness")
@_spec_option
@click.option("--cert", "cert_path", type=click.Path(dir_okay=False), default=None)
@_base_option()
@_budget_option
@click.option("--window-radius", type=int, default=None)
@_output_options
@click.pass_context
def roe_witness(ctx: click.Context, **values: Any) -> None:
    """Exact window witness; without --cert, the rooted ray of length R from the base."""
    _execute(ctx, "roe-witness", **values)


@cli.command("embed-profile")
@_spec_option
@click.option("--word", default=None, help="word w for f(m) = w^m x")
@click.option("--ray", "ray_path", type=click.Path(dir_okay=False), default=None)
@click.option("--radius", type=int, default=None, help="domain radius n")
@_base_option()
@click.option("--metric-budget", type=int, default=None)
@_output_options
@click.pass_context
def embed_profile(ctx: click.Context, **values: Any) -> None:
    """Control sequences of a map from {-n..n}."""
    _execute(ctx, "embed-profile", **values)


@cli.command("extend-transitive")
@_spec_option
@_budget_option
@_output_options
@click.pass_context
def extend_transitive(ctx: click.Context, **values: Any) -> None:
    """Join the orbits of a finite action with transpositions."""
    _execute(ctx, "extend-transitive", **values)


@cli.command()
@click.option("--sweep/--no-sweep", default=True, help="include the exhaustive oracle sweep")
@_output_options
@click.pass_context
def selftest(ctx: click.Context, **values: Any) -> None:
    """Run the built-in acceptance checks."""
    _execute(ctx, "selftest", **values)


def main() -> None:
    cli(obj={})


if __name__ == "__main__":
    main()
