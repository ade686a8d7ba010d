from pathlib import Path
from typing import Optional

import typer

from capcover.benchmark import BUILTIN_SUITES
from capcover.benchmark import load_suite
from capcover.benchmark import run_suite
from capcover.benchmark import save_bench
from capcover.commands.utils import JOBS_OPTION
from capcover.commands.utils import SEED_OPTION
from capcover.commands.utils import VERBOSE_OPTION
from capcover.commands.utils import command_context
from capcover.commands.utils import resolve_jobs
from capcover.commands.utils import resolve_seed


def bench(
    suite: str = typer.Option(
        "chain", "--suite", help=f"builtin suite ({', '.join(BUILTIN_SUITES)}) or path to a yaml suite"
    ),
    out: Path = typer.Option(..., "--out", "-o", help="csv file to write"),
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Run a batch of generated instances through the cover pipeline and write one csv row per instance.

    Expected format of a yaml suite:

    \b
    name: my-suite
    cover:
      exact_threshold: 12
    instances:
      - generator:
          _target_: capcover.datasets.gen_chain
          dim: 2
          n: 3
          radii: ${pi:1,12}
        repeats: 5
    """
    with command_context("bench", verbose):
        table = run_suite(load_suite(suite), seed=resolve_seed(seed), n_jobs=resolve_jobs(jobs))
        save_bench(table, out)
        failed = int(table["error"].notna().sum())
        typer.echo(f"{len(table)} instances, {int(table['valid'].sum())} valid covers, {failed} errors")


if __name__ == "__main__":
    typer.run(bench)
