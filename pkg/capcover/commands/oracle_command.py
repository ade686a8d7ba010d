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
from capcover.oracle import AGREEMENT_MARGIN_BAND
from capcover.oracle import OracleReport
from capcover.oracle import eq2_harness
from capcover.oracle import grid_separability
from capcover.oracle import lemma7_harness
from capcover.oracle import minimal_enclosing_cap_estimate
from capcover.oracle import separability_agreement
from capcover.oracle import zone_criterion_harness
from capcover.separability import PatternFeasibilitySolver
from capcover.separability import SeparabilityStatus
from capcover.separability import check_nonseparable
from capcover.serialization import load_instance
from capcover.serialization import verdict_to_dict
from capcover.sphere import EPS_GEOM

oracle_app = typer.Typer(help="Brute-force checks of the geometric building blocks. Exit code 0 on pass, 1 on fail.")


def _report(report: OracleReport):
    emit(report.to_dict())
    if not report.passed:
        raise typer.Exit(code=int(ExitCode.verify_failed))


@oracle_app.command("grid-sep")
def grid_sep(
    instance_path: Path = typer.Argument(..., metavar="FILE", help="instance file on S^2"),
    resolution: int = typer.Option(10 ** 6, "--resolution", help="number of grid normals"),
    verbose: bool = VERBOSE_OPTION,
):
    """Scan a grid of normals for a great circle splitting the family; passes when none is found."""
    with command_context("oracle grid-sep", verbose):
        report = grid_separability(load_instance(instance_path), resolution=resolution)
    _report(report)


@oracle_app.command("lemma7")
def lemma7(
    families: int = typer.Option(1000, "--families", help="random plank families"),
    samples: int = typer.Option(100, "--samples", help="points per family"),
    max_caps: int = typer.Option(6, "--max-caps", help="largest family size"),
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Check that points of maximal norm in their translate set lie in the Bang cell and outside the planks."""
    with command_context("oracle lemma7", verbose):
        report = lemma7_harness(
            families=families,
            samples_per_family=samples,
            seed=resolve_seed(seed),
            max_caps=max_caps,
            n_jobs=resolve_jobs(jobs),
        )
    _report(report)


@oracle_app.command("mec")
def mec(
    instance_path: Path = typer.Argument(..., metavar="FILE", help="instance file"),
    iters: int = typer.Option(2000, "--iters", help="descent iterations per start"),
    restarts: int = typer.Option(8, "--restarts", help="random starts"),
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Estimate the minimal enclosing cap and compare its radius with the sum of radii.

    Applies to non-separable families only: it passes when the estimate does not exceed the sum of radii.
    Separable or undecided families get the verdict "not-applicable" and exit code 0.
    """
    with command_context("oracle mec", verbose):
        instance = load_instance(instance_path)
        seed = resolve_seed(seed)
        verdict = check_nonseparable(instance, solver=PatternFeasibilitySolver(seed=seed), n_jobs=resolve_jobs(jobs))
        if verdict.status is not SeparabilityStatus.non_separable:
            emit(
                {
                    "verdict": "not-applicable",
                    "sum_radii": float(instance.sum_radii),
                    "separability": verdict_to_dict(verdict),
                }
            )
            return
        center, radius = minimal_enclosing_cap_estimate(instance, iters=iters, restarts=restarts, seed=seed)
        gap = instance.sum_radii - radius
        passed = gap >= -EPS_GEOM
        emit(
            {
                "verdict": "pass" if passed else "fail",
                "center": [float(x) for x in center],
                "radius": float(radius),
                "sum_radii": float(instance.sum_radii),
                "gap": float(gap),
                "separability": verdict_to_dict(verdict),
            }
        )
    if not passed:
        raise typer.Exit(code=int(ExitCode.verify_failed))


@oracle_app.command("eq2")
def eq2(
    families: int = typer.Option(100, "--families", help="random plank families"),
    samples: int = typer.Option(1000, "--samples", help="points per family"),
    max_caps: int = typer.Option(6, "--max-caps", help="largest family size"),
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Check the two forms of A_w membership and that maximal points belong to A_w."""
    with command_context("oracle eq2", verbose):
        report = eq2_harness(
            families=families,
            samples_per_family=samples,
            seed=resolve_seed(seed),
            max_caps=max_caps,
            n_jobs=resolve_jobs(jobs),
        )
    _report(report)


@oracle_app.command("zone-criterion")
def zone_criterion(
    pairs: int = typer.Option(1000, "--pairs", help="random zone pairs"),
    samples: int = typer.Option(10_000, "--samples", help="sampled points per pair"),
    dim: int = typer.Option(2, "--dim", help="sphere dimension"),
    seed: Optional[int] = SEED_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Compare the analytic zone containment criterion with sampled containment."""
    with command_context("oracle zone-criterion", verbose):
        report = zone_criterion_harness(
            pairs=pairs, samples=samples, seed=resolve_seed(seed), dim=dim, n_jobs=resolve_jobs(jobs)
        )
    _report(report)


@oracle_app.command("sep-agreement")
def sep_agreement(
    instances: int = typer.Option(500, "--instances", help="random families on S^2"),
    resolution: int = typer.Option(10 ** 6, "--resolution", help="number of grid normals per family"),
    margin_band: float = typer.Option(
        AGREEMENT_MARGIN_BAND, "--margin-band", help="solver margins within the band are not compared with the grid"
    ),
    seed: Optional[int] = SEED_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Cross-check the separability solver against the grid scan on random families."""
    with command_context("oracle sep-agreement", verbose):
        report = separability_agreement(
            n_instances=instances, resolution=resolution, seed=resolve_seed(seed), margin_band=margin_band
        )
    _report(report)
