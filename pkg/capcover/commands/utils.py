from contextlib import contextmanager
from enum import IntEnum
from pathlib import Path
from typing import Any
from typing import Iterator
from typing import Optional

import typer

from capcover import SETTINGS
from capcover.core.exceptions import MalformedFileError
from capcover.core.exceptions import UnsupportedSizeError
from capcover.core.exceptions import ValidationError
from capcover.loggers import ConsoleLogger
from capcover.loggers import covlogger
from capcover.serialization import atomic_write_text
from capcover.serialization import pretty_json_dumps


class ExitCode(IntEnum):
    """Process exit codes of the capcover commands."""

    ok = 0
    verify_failed = 1
    separable = 2
    indeterminate = 3
    refused = 4
    invalid_cover = 5
    malformed = 64


VERBOSE_OPTION = typer.Option(False, "--verbose", "-v", help="log progress to stderr")
SEED_OPTION = typer.Option(None, "--seed", help="random seed, default from capcover settings or CAPCOVER_SEED")
JOBS_OPTION = typer.Option(None, "--jobs", "-j", help="number of joblib workers, default from capcover settings")


def resolve_seed(seed: Optional[int]) -> int:
    """Seed given on the command line or the configured default."""
    return SETTINGS.seed if seed is None else seed


def resolve_jobs(jobs: Optional[int]) -> int:
    """Workers given on the command line or the configured default."""
    return SETTINGS.n_jobs if jobs is None else jobs


def fail(message: str, code: ExitCode) -> typer.Exit:
    """Print an error to stderr and build the exit with ``code``."""
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=int(code))


@contextmanager
def command_context(name: str, verbose: bool = False) -> Iterator[None]:
    """Attach the console logger if asked and turn input errors into exit code 64.

    Malformed files, unreadable paths and invalid parameters leave with ``ExitCode.malformed`` and a one-line
    diagnostic on stderr; other exits pass through.
    """
    idx = covlogger.add(ConsoleLogger()) if verbose else None
    covlogger.start_experiment(job_type=name)
    try:
        yield
    except MalformedFileError as e:
        raise fail(f"malformed file: {e}", ExitCode.malformed) from e
    except OSError as e:
        raise fail(f"cannot access {e.filename or 'file'}: {e.strerror or e}", ExitCode.malformed) from e
    except (ValidationError, UnsupportedSizeError) as e:
        raise fail(str(e), ExitCode.malformed) from e
    finally:
        covlogger.finish_experiment()
        if idx is not None:
            covlogger.remove(idx)


def emit(payload: Any, out: Optional[Path] = None):
    """Write a JSON payload to ``out`` atomically or print it."""
    text = pretty_json_dumps(payload)
    if out is None:
        typer.echo(text, nl=False)
    else:
        atomic_write_text(out, text)
