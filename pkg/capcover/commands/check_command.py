from pathlib import Path
from typing import Optional

import typer

from capcover.commands.utils import JOBS_OPTION
from capcover.commands.utils import SEED_OPTION
from capcover.commands.utils import VERBOSE_OPTION
from capcover.commands.utils import ExitCode
from capcover.commands.utils import command_context
from capcover.commands.utils import emit
from capcover.commands.utils import resolve_jobs
from capcover.commands.utils import resolve_seed
from capcover.separability import PatternFeasibilitySolver
from capcover.separability import SeparabilityStatus
from capcover.separability import check_nonseparable
from capcover.serialization import load_instance
from capcover.serialization import verdict_to_dict

_STATUS_CODES = {
    SeparabilityStatus.non_separable: ExitCode.ok,
    SeparabilityStatus.separable: ExitCode.separable,
    SeparabilityStatus.indeterminate: ExitCode.indeterminate,
}


def check(
    instance_path: Path = typer.Argument(..., metavar="FILE", help="instance file"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="solver restarts per sign pattern"),
    iters: Optional[int] = typer.Option(None, "--iters", help="solver iterations per restart"),
    no_overlap: bool = typer.Option(False, "--no-overlap", help="enumerate patterns over single caps"),
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Decide whether an avoiding great sphere splits the family of caps.

    Prints the verdict as JSON. Exit code 0 means non-separable, 2 separable, 3 undecided.
    """
    with command_context("check", verbose):
        instance = load_instance(instance_path)
        solver = PatternFeasibilitySolver(max_iters=iters, restarts=restarts, seed=resolve_seed(seed))
        verdict = check_nonseparable(instance, solver=solver, n_jobs=resolve_jobs(jobs), use_overlap=not no_overlap)
        emit(verdict_to_dict(verdict))
    raise typer.Exit(code=int(_STATUS_CODES[verdict.status]))


if __name__ == "__main__":
    typer.run(check)
