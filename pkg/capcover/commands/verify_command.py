from pathlib import Path
from typing import Optional

import typer

from capcover.commands.utils import VERBOSE_OPTION
from capcover.commands.utils import ExitCode
from capcover.commands.utils import command_context
from capcover.commands.utils import emit
from capcover.commands.utils import resolve_seed
from capcover.oracle import verify_cover
from capcover.serialization import load_certificate
from capcover.serialization import load_instance
from capcover.serialization import read_certificate_seed
from capcover.sphere import EPS_GEOM


def verify(
    certificate_path: Path = typer.Argument(..., metavar="CERT", help="certificate file"),
    instance_path: Path = typer.Argument(..., metavar="FILE", help="instance file the certificate was computed for"),
    samples: int = typer.Option(10_000, "--samples", help="sampled points per input cap"),
    seed: Optional[int] = typer.Option(None, "--seed", help="sampling seed, default the certificate seed"),
    verbose: bool = VERBOSE_OPTION,
):
    """Re-check a certificate against its instance, analytically and on random points of every cap.

    Also checks that the cover radius equals the sum of radii. Exit code 0 means every check passed, 1 a failure.
    """
    with command_context("verify", verbose):
        instance = load_instance(instance_path)
        certificate = load_certificate(certificate_path, instance)
        if seed is None:
            seed = read_certificate_seed(certificate_path)
        report = verify_cover(certificate.cover_cap, instance.caps, samples=samples, seed=resolve_seed(seed))
        radius_gap = abs(certificate.cover_cap.radius - instance.sum_radii)
        payload = report.to_dict()
        payload["radius_gap"] = radius_gap
        passed = report.passed and radius_gap <= EPS_GEOM
        payload["verdict"] = "pass" if passed else "fail"
        emit(payload)
    if not passed:
        raise typer.Exit(code=int(ExitCode.verify_failed))


if __name__ == "__main__":
    typer.run(verify)
