from pathlib import Path
from typing import Optional

import typer

from capcover.analysis import plot_instance
from capcover.commands.utils import SEED_OPTION
from capcover.commands.utils import VERBOSE_OPTION
from capcover.commands.utils import command_context
from capcover.commands.utils import resolve_seed
from capcover.separability import PatternFeasibilitySolver
from capcover.separability import check_nonseparable
from capcover.serialization import atomic_write_text
from capcover.serialization import load_certificate
from capcover.serialization import load_instance


def plot(
    instance_path: Path = typer.Argument(..., metavar="FILE", help="instance file on S^2"),
    certificate_path: Optional[Path] = typer.Argument(None, metavar="[CERT]", help="certificate file"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="SVG file to write, stdout if not set"),
    witness: bool = typer.Option(
        True, "--witness/--no-witness", help="without a certificate, draw a separating great circle if one exists"
    ),
    seed: Optional[int] = SEED_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Draw the caps, the cover cap and a separating great circle as two orthographic views.

    Views look from +v and -v, v being the cover center, or e_3 without a certificate.
    """
    with command_context("plot", verbose):
        instance = load_instance(instance_path)
        certificate = None if certificate_path is None else load_certificate(certificate_path, instance)
        witness_normal = None
        if certificate is not None:
            witness_normal = certificate.separability.witness_normal
        elif witness and instance.dim == 2:
            verdict = check_nonseparable(instance, solver=PatternFeasibilitySolver(seed=resolve_seed(seed)), n_jobs=1)
            witness_normal = verdict.witness_normal if verdict.separable else None
        svg = plot_instance(instance, certificate=certificate, witness_normal=witness_normal)
        if out is None:
            typer.echo(svg, nl=False)
        else:
            atomic_write_text(out, svg)


if __name__ == "__main__":
    typer.run(plot)
