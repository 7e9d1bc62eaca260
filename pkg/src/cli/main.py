"""
Command-line interface for the dioperad engine.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for
invalid input, parse errors and exceeded caps, 3 when the arity window
cannot hold a requested computation.
"""

from functools import wraps
from pathlib import Path
from typing import Callable, Optional, Tuple

import click
from pydantic import BaseModel

from ..config import get_settings
from ..dioperad import catalogue, dump_presentation, load_named, quadratic_dual, quotient_slot
from ..exceptions import DioperadError, InvalidInputError
from ..formalgeo import (
    TfStructure,
    assemble,
    collection_axiom_check,
    dump_field,
    mc_check,
    tf_check,
)
from ..formalgeo.checks import TF_VARIANTS
from ..formalgeo.fieldfile import field_from_data
from ..formalgeo.polynomial import PolyField
from ..formalgeo.tensors import tensors_from_data
from ..cobar import koszulness_report
from ..minimodel import decompose, decomposition_report, dump_map, load_map, morphism_check
from ..models import FreeDimReport, JobConfig, SlotDimension
from ..resolutions import RESOLUTIONS, resolution_report
from ..treespace import enumerate_trees
from ..yamlio import load_yaml
from .console import logger, setup_console
from .reporting import render, write_report

MODELS = ("lie1bi", "liebi", "tf")


def parse_slot(text: str) -> Tuple[int, int]:
    try:
        m, n = (int(part) for part in text.split(","))
    except ValueError:
        raise InvalidInputError(f"slot must read m,n, not {text!r}", slot=text)
    return m, n


def load_structure(path: str, order: Optional[int] = None):
    """A tensors file assembled into its structure, or a field file as is."""
    data = load_yaml(path)
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "field":
        field = field_from_data(data, path)
        return field if order is None else field.with_order(order)
    tc, file_order = tensors_from_data(data, path)
    return tc, assemble(tc, order if order is not None else file_order)


def engine_command(name: str) -> Callable:
    """Run a command body, render its report and map the outcome to an exit code."""

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            ctx = click.get_current_context()
            options = ctx.find_root().obj
            try:
                report = func(*args, **kwargs)
            except DioperadError as e:
                logger.error(f"✗ {e.message}")
                ctx.exit(e.exit_code)
            if report is None:
                ctx.exit(0)
            assert isinstance(report, BaseModel)
            write_report(render(name, report, options["format"]), options["output"])
            if report.passed:
                logger.success(f"✓ {name} passed")
                ctx.exit(0)
            logger.warning(f"✗ {name} failed")
            ctx.exit(1)

        return wrapper

    return decorator


@click.group()
@click.option(
    "--format",
    "report_format",
    type=click.Choice(["text", "structured"]),
    default=None,
    help="Report format (defaults to the configured one)",
)
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="Report path; stdout when absent")
@click.option("--log-level", default=None, help="Console log level")
@click.pass_context
def cli(ctx: click.Context, report_format: Optional[str], output: Optional[str], log_level: Optional[str]):
    """Exact-arithmetic dioperad calculus engine."""
    settings = get_settings()
    setup_console(log_level or settings.log_level)
    ctx.obj = {"format": report_format or settings.report_format, "output": output}


@cli.command("presentations")
def presentations_command():
    """List the shipped presentations."""
    for name in catalogue():
        click.echo(name)


@cli.command("free-dim")
@click.argument("presentation")
@click.option("--slot", "slot_text", required=True, help="Slot as m,n")
@click.option("--max-vertices", type=int, default=None, help="Vertex cap; m+n-2 when absent")
@click.option("--cross-check", is_flag=True, help="Match the enumerated tree shapes pairwise with networkx")
@engine_command("free-dim")
def free_dim_command(presentation: str, slot_text: str, max_vertices: Optional[int], cross_check: bool):
    """Free, ideal and quotient dimensions of one slot."""
    m, n = parse_slot(slot_text)
    vertices = max_vertices if max_vertices is not None else max(1, m + n - 2)
    JobConfig(command="free-dim", inputs=[presentation], window=max(3, m + n), max_vertices=vertices).validate_caps()
    p = load_named(presentation)
    logger.info(f"Computing slot ({m},{n}) of {p.name}")
    slot = quotient_slot(p, m, n, vertices)
    shapes = None
    if cross_check:
        shapes = len(enumerate_trees(m, n, p.generators.support(), vertices, cross_check=True))
    return FreeDimReport(
        presentation=p.name,
        slot=SlotDimension(m=m, n=n, dim=slot.dim, free_dim=slot.free.dim, ideal_dim=slot.ideal_dim),
        tree_shapes=shapes,
    )


@cli.command("dual")
@click.argument("presentation")
@engine_command("dual")
def dual_command(presentation: str):
    """Emit the quadratic dual as a presentation file."""
    p = load_named(presentation)
    dual = quadratic_dual(p)
    output = click.get_current_context().find_root().obj["output"]
    text = dump_presentation(dual, output)
    if output is None:
        click.echo(text, nl=False)
    logger.success(f"✓ Wrote {dual.name}")
    return None


@cli.command("koszul")
@click.argument("presentation")
@click.option("--window", type=int, default=None, help="Largest m+n examined")
@click.option("--reversed", "reversed_order", is_flag=True, help="Filter the cobar complex in reverse order")
@click.option("--no-criterion", is_flag=True, help="Skip the reduced-tree comparison")
@engine_command("koszul")
def koszul_command(presentation: str, window: Optional[int], reversed_order: bool, no_criterion: bool):
    """Koszulness of a presentation inside an arity window."""
    job = JobConfig(command="koszul", inputs=[presentation], **({"window": window} if window is not None else {}))
    job.validate_caps()
    p = load_named(presentation)
    logger.info(f"Checking {p.name} up to m+n = {job.window}")
    return koszulness_report(
        p,
        job.window,
        reversed_order=reversed_order,
        workers=get_settings().worker_count,
        with_criterion=not no_criterion,
    )


@cli.command("resolution-d2")
@click.argument("resolution", type=click.Choice(list(RESOLUTIONS)))
@click.option("--window", type=int, default=None, help="Largest m+n examined")
@click.option("--skip-presentation", is_flag=True, help="Skip the degree zero comparison")
@engine_command("resolution-d2")
def resolution_command(resolution: str, window: Optional[int], skip_presentation: bool):
    """d² and consistency checks of an explicit resolution."""
    job = JobConfig(command="resolution-d2", inputs=[resolution], **({"window": window} if window is not None else {}))
    job.validate_caps()
    logger.info(f"Checking d² of {resolution} up to m+n = {job.window}")
    return resolution_report(resolution, job.window, with_presentation=not skip_presentation)


@cli.command("mc-check")
@click.argument("tensors", type=click.Path(exists=True, dir_okay=False))
@click.option("--model", type=click.Choice(MODELS), default=None, help="Expected model of the file")
@click.option("--order", type=int, default=None, help="Truncation order N")
@click.option("--axioms", is_flag=True, help="Check the algebraic identities of the (1,2) and (2,1) slots instead")
@click.option("--variant", type=click.Choice(TF_VARIANTS), default=None, help="TF variant for --axioms")
@engine_command("mc-check")
def mc_check_command(tensors: str, model: Optional[str], order: Optional[int], axioms: bool, variant: Optional[str]):
    """Maurer-Cartan check of a tensor collection."""
    data = load_yaml(tensors)
    tc, file_order = tensors_from_data(data, tensors)
    if model is not None and tc.model != model:
        raise InvalidInputError(f"file holds a {tc.model} collection, not {model}", path=tensors)
    order = order if order is not None else (file_order or get_settings().default_order)
    JobConfig(command="mc-check", inputs=[tensors], order=order).validate_caps()
    if axioms:
        return collection_axiom_check(tc, variant)
    structure = assemble(tc, order)
    if isinstance(structure, TfStructure):
        return tf_check(structure, order)
    return mc_check(structure)


@cli.command("decompose")
@click.argument("structure", type=click.Path(exists=True, dir_okay=False))
@click.option("--order", type=int, default=None, help="Truncation order N")
@click.option("--emit", "emit_dir", type=click.Path(file_okay=False), default=None, help="Directory for Φ and F")
@engine_command("decompose")
def decompose_command(structure: str, order: Optional[int], emit_dir: Optional[str]):
    """Split a structure into minimal and contractible parts."""
    loaded = load_structure(structure, order)
    gamma = loaded if isinstance(loaded, PolyField) else loaded[1]
    if not isinstance(gamma, PolyField) or gamma.coords.model != "odd":
        raise InvalidInputError("decompose needs a lie1bi structure on the odd model", path=structure)
    JobConfig(command="decompose", inputs=[structure], order=gamma.order).validate_caps()
    result = decompose(gamma, gamma.order)
    report = decomposition_report(result, gamma)
    if emit_dir is not None:
        target = Path(emit_dir)
        target.mkdir(parents=True, exist_ok=True)
        dump_field(result.reduced_minimal(), target / "minimal.field.yaml")
        dump_map(result.f_map, target / "f.map.yaml")
        logger.info(f"Wrote minimal part and map to {target}")
    return report


@cli.command("morphism-check")
@click.argument("map_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("target", type=click.Path(exists=True, dir_okay=False))
@engine_command("morphism-check")
def morphism_check_command(map_path: str, source: str, target: str):
    """Whether a coordinate map F satisfies F*Γ' = Γ with the structural conditions."""
    f_map = load_map(map_path)
    JobConfig(command="morphism-check", inputs=[map_path, source, target], order=f_map.order).validate_caps()
    gamma = load_structure(source, f_map.order)
    gamma_prime = load_structure(target, f_map.order)
    gamma = gamma if isinstance(gamma, PolyField) else gamma[1]
    gamma_prime = gamma_prime if isinstance(gamma_prime, PolyField) else gamma_prime[1]
    return morphism_check(f_map, gamma, gamma_prime)


def main() -> None:
    cli(obj={})
