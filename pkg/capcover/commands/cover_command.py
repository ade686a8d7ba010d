from pathlib import Path
from typing import Optional

import typer

from capcover.bang import MaxNormSigner
from capcover.commands.utils import JOBS_OPTION
from capcover.commands.utils import SEED_OPTION
from capcover.commands.utils import VERBOSE_OPTION
from capcover.commands.utils import ExitCode
from capcover.commands.utils import command_context
from capcover.commands.utils import emit
from capcover.commands.utils import fail
from capcover.commands.utils import resolve_jobs
from capcover.commands.utils import resolve_seed
from capcover.core.exceptions import HypothesisError
from capcover.core.exceptions import SeparableInputError
from capcover.core.exceptions import UndecidedSeparabilityError
from capcover.cover import CoverOptions
from capcover.cover import cover_caps
from capcover.separability import PatternFeasibilitySolver
from capcover.serialization import load_instance
from capcover.serialization import save_certificate
from capcover.serialization import verdict_to_dict


def cover(
    instance_path: Path = typer.Argument(..., metavar="FILE", help="instance file"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="certificate file to write"),
    skip_check: bool = typer.Option(False, "--skip-check", help="do not run the separability check"),
    exact_threshold: Optional[int] = typer.Option(
        None, "--exact-threshold", help="largest family signed exhaustively, 0 forces local search"
    ),
    track_separability: bool = typer.Option(
        False, "--track-separability", help="re-check non-separability after every merge (up to 12 caps)"
    ),
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Cover a non-separable family of caps by one cap of radius equal to the sum of radii.

    Prints the certificate summary as JSON. Exit code 0 means a valid certificate, 3 an undecided separability
    check, 4 a refused input (separable family or radii summing to pi/2 or more) and 5 a cover that failed its
    verification; the certificate is still written in that case, marked invalid.
    """
    with command_context("cover", verbose):
        instance = load_instance(instance_path)
        seed = resolve_seed(seed)
        options = CoverOptions(
            skip_check=skip_check,
            signer=MaxNormSigner(exact_threshold=exact_threshold, seed=seed),
            solver=PatternFeasibilitySolver(seed=seed),
            track_separability=track_separability,
            n_jobs=resolve_jobs(jobs),
        )
        try:
            certificate = cover_caps(instance, options)
        except SeparableInputError as e:
            emit({"refused": "separable", "separability": verdict_to_dict(e.verdict)})
            raise fail(str(e), ExitCode.refused) from e
        except UndecidedSeparabilityError as e:
            emit({"refused": "undecided", "separability": verdict_to_dict(e.verdict)})
            raise fail(str(e), ExitCode.indeterminate) from e
        except HypothesisError as e:
            raise fail(str(e), ExitCode.refused) from e

        if out is not None:
            save_certificate(certificate, out, seed=seed)
        emit(certificate.summary())
    if not certificate.valid:
        typer.echo(f"error: cover cap misses an input cap, min slack {certificate.min_slack:.3e}", err=True)
        raise typer.Exit(code=int(ExitCode.invalid_cover))


if __name__ == "__main__":
    typer.run(cover)
