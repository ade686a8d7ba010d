import time
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Union

import hydra_slayer
import numpy as np
import pandas as pd
from joblib import Parallel
from joblib import delayed
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from capcover.bang import MaxNormSigner
from capcover.core import BaseMixin
from capcover.core.exceptions import CapCoverError
from capcover.core.exceptions import MalformedFileError
from capcover.cover import CoverOptions
from capcover.cover import cover_caps
from capcover.loggers import covlogger
from capcover.serialization.files import atomic_write_text

SUITES_DIR = Path(__file__).parent / "suites"
BUILTIN_SUITES = {path.stem: path for path in sorted(SUITES_DIR.glob("*.yaml"))}

BENCH_COLUMNS = [
    "instance_id",
    "generator",
    "n",
    "dim",
    "sum_alpha",
    "w_before",
    "w_after",
    "merges",
    "min_slack",
    "max_slack",
    "valid",
    "wall_time",
    "error",
]

_COVER_KEYS = ("exact_threshold", "skip_check", "track_separability")


class BenchSuite(BaseMixin):
    """Named list of instance generator configs with repeats."""

    def __init__(self, name: str, instances: List[Dict[str, Any]], cover: Optional[Dict[str, Any]] = None):
        """Init BenchSuite.

        Parameters
        ----------
        name:
            suite name, used as prefix of instance ids
        instances:
            entries ``{"generator": {"_target_": ..., **params}, "repeats": k}``; ``seed`` is set per repeat
        cover:
            options of ``cover_caps``: ``exact_threshold``, ``skip_check``, ``track_separability``
        """
        self.name = name
        self.instances = instances
        self.cover = cover
        self._validate_instances(instances)
        self._validate_cover(cover or {})

    @staticmethod
    def _validate_instances(instances: List[Dict[str, Any]]):
        if not isinstance(instances, list) or not instances:
            raise MalformedFileError("expected a nonempty list", field="instances")
        for idx, entry in enumerate(instances):
            field = f"instances[{idx}]"
            if not isinstance(entry, dict) or not isinstance(entry.get("generator"), dict):
                raise MalformedFileError("expected an object with a generator config", field=field)
            if "_target_" not in entry["generator"]:
                raise MalformedFileError("generator config has no _target_", field=f"{field}.generator")
            repeats = entry.get("repeats", 1)
            if isinstance(repeats, bool) or not isinstance(repeats, int) or repeats < 1:
                raise MalformedFileError(f"repeats should be a positive integer, {repeats!r} given", field=field)

    @staticmethod
    def _validate_cover(cover: Dict[str, Any]):
        unknown = sorted(set(cover) - set(_COVER_KEYS))
        if unknown:
            raise MalformedFileError(f"unknown cover options {unknown}", field="cover")

    @property
    def size(self) -> int:
        """Total number of instances."""
        return sum(entry.get("repeats", 1) for entry in self.instances)


def load_suite(name_or_path: Union[str, Path]) -> BenchSuite:
    """Load a builtin suite by name or a YAML suite file.

    Radii may use the ``${pi:num,den}`` resolver.

    Raises
    ------
    MalformedFileError:
        if the file cannot be parsed or does not describe a suite
    """
    path = BUILTIN_SUITES.get(str(name_or_path), Path(name_or_path))
    if not path.is_file():
        raise MalformedFileError(
            f"no builtin suite or file {str(name_or_path)!r}, builtin suites: {', '.join(BUILTIN_SUITES)}"
        )
    try:
        config = OmegaConf.to_container(OmegaConf.load(path), resolve=True)
    except OmegaConfBaseException as e:
        raise MalformedFileError(f"cannot load suite: {e}") from e
    except Exception as e:  # yaml parser errors
        raise MalformedFileError(f"cannot parse suite: {e}") from e
    if not isinstance(config, dict):
        raise MalformedFileError("top level should be a mapping", line=1)
    return BenchSuite(
        name=str(config.get("name", path.stem)), instances=config.get("instances"), cover=config.get("cover")
    )


def _instance_seed(seed: int, entry_idx: int, repeat: int) -> int:
    return int(np.random.SeedSequence([seed, entry_idx, repeat]).generate_state(1)[0])


def _run_instance(
    instance_id: str, generator: Dict[str, Any], seed: int, cover: Dict[str, Any]
) -> Dict[str, Any]:
    target = str(generator["_target_"])
    row: Dict[str, Any] = {column: None for column in BENCH_COLUMNS}
    row.update(instance_id=instance_id, generator=target.rsplit(".", 1)[-1], valid=False)
    start = time.perf_counter()
    try:
        instance = hydra_slayer.get_from_params(**{**generator, "seed": seed})
        row.update(n=instance.n, dim=instance.dim, sum_alpha=instance.sum_radii)
        options = CoverOptions(
            skip_check=bool(cover.get("skip_check", False)),
            signer=MaxNormSigner(exact_threshold=cover.get("exact_threshold"), seed=seed),
            track_separability=bool(cover.get("track_separability", False)),
            n_jobs=1,
        )
        summary = cover_caps(instance, options).summary()
        row.update({key: summary[key] for key in ("w_before", "w_after", "merges", "min_slack", "max_slack", "valid")})
    except CapCoverError as e:
        row["error"] = f"{type(e).__name__}: {e}"
    row["wall_time"] = time.perf_counter() - start
    return row


def run_suite(suite: BenchSuite, seed: int = 0, n_jobs: int = 1) -> pd.DataFrame:
    """Generate and cover every instance of the suite.

    Instance ``k`` of entry ``j`` is generated with a seed derived from ``(seed, j, k)``. Refused or failed covers
    give a row with the error and empty measurements.

    Parameters
    ----------
    suite:
        suite to run
    seed:
        base seed
    n_jobs:
        joblib workers; instances run in parallel

    Returns
    -------
    :
        one row per instance with columns ``BENCH_COLUMNS``, in suite order
    """
    jobs = []
    for entry_idx, entry in enumerate(suite.instances):
        for repeat in range(entry.get("repeats", 1)):
            jobs.append(
                (f"{suite.name}-{entry_idx}-{repeat}", entry["generator"], _instance_seed(seed, entry_idx, repeat))
            )
    covlogger.log(f"Bench suite {suite.name}: {len(jobs)} instances, seed {seed}")
    rows = Parallel(n_jobs=n_jobs)(
        delayed(_run_instance)(instance_id, generator, instance_seed, suite.cover or {})
        for instance_id, generator, instance_seed in jobs
    )
    for row in rows:
        covlogger.log_bench_row(row)
    return pd.DataFrame(rows, columns=BENCH_COLUMNS)


def save_bench(table: pd.DataFrame, path: Union[str, Path]):
    """Write the bench table as CSV atomically."""
    atomic_write_text(path, table.to_csv(index=False, float_format="%.17g"))


__all__ = ["BENCH_COLUMNS", "BUILTIN_SUITES", "BenchSuite", "load_suite", "run_suite", "save_bench"]
