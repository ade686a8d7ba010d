import configparser
import os
import warnings
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

SEED_ENV_VARIABLE = "CAPCOVER_SEED"
MAX_EXACT_SIZE = 24


def _seed_from_env(default: int) -> int:
    """Read default seed from ``CAPCOVER_SEED`` environment variable."""
    raw = os.environ.get(SEED_ENV_VARIABLE)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        warnings.warn(f"{SEED_ENV_VARIABLE}={raw!r} is not an integer, falling back to seed {default}")
        return default


def _positive(value: int, name: str, allow_zero: bool = False, upper: Optional[int] = None) -> int:
    lower = 0 if allow_zero else 1
    if value < lower:
        raise ValueError(f"Setting {name} should be >= {lower}, {value} given")
    if upper is not None and value > upper:
        raise ValueError(f"Setting {name} should be <= {upper}, {value} given")
    return value


class Settings:
    """capcover settings: default seed and default solver budgets."""

    def __init__(  # noqa: D107
        self,
        seed: Optional[int] = None,
        exact_threshold: int = 24,
        signing_restarts: int = 16,
        max_iters: int = 5000,
        restarts: int = 8,
        n_jobs: int = 1,
    ):
        # None means: CAPCOVER_SEED if set, else 0
        self.seed: int = seed if seed is not None else _seed_from_env(0)
        self.exact_threshold: int = _positive(exact_threshold, "exact_threshold", allow_zero=True, upper=MAX_EXACT_SIZE)
        self.signing_restarts: int = _positive(signing_restarts, "signing_restarts", allow_zero=True)
        self.max_iters: int = _positive(max_iters, "max_iters")
        self.restarts: int = _positive(restarts, "restarts", allow_zero=True)
        self.n_jobs: int = n_jobs

    @staticmethod
    def parse() -> "Settings":
        """Parse and return the settings.

        Returns
        -------
        Settings:
            settings merged from local and user config files
        """
        kwargs = MergedConfigParser(ConfigFileFinder("capcover")).parse()
        # environment overrides config files for the seed
        if SEED_ENV_VARIABLE in os.environ:
            kwargs.pop("seed", None)
        return Settings(**kwargs)

    def type_hint(self, key: str):
        """Return type of the option ``key`` (``None`` type for unknown options)."""
        return type(getattr(self, key, None))


class ConfigFileFinder:
    """Encapsulate the logic for finding and reading config files.

    Adapted from:
    - https://github.com/catalyst-team/catalyst (Apache-2.0 License)
    """

    def __init__(self, program_name: str) -> None:
        """Initialize object to find config files.

        Parameters
        ----------
        program_name:
            name of the current program, used for file names and INI section
        """
        self.program_name = program_name
        self.user_config_file = self._user_config_file(program_name)
        self.project_filenames = (f".{program_name}",)
        self.local_directory = os.path.abspath(os.curdir)

    @staticmethod
    def _user_config_file(program_name: str) -> str:
        if os.name == "nt":
            home_dir = os.path.expanduser("~")
            config_file_basename = f".{program_name}"
        else:
            home_dir = os.environ.get("XDG_CONFIG_HOME", os.path.expanduser("~/.config"))
            config_file_basename = program_name
        return os.path.join(home_dir, config_file_basename)

    @staticmethod
    def _read_config(*files: str) -> Tuple[configparser.RawConfigParser, List[str]]:
        config = configparser.RawConfigParser()

        found_files: List[str] = []
        for filename in files:
            try:
                found_files.extend(config.read(filename))
            except (UnicodeDecodeError, configparser.ParsingError) as e:
                warnings.warn(f"Config file {filename} could not be read and is ignored: {e}")
        return config, found_files

    def generate_possible_local_files(self):
        """Walk up from the working directory and yield the first project config found."""
        parent = tail = os.getcwd()
        found_config_files = False
        while tail and not found_config_files:
            for project_filename in self.project_filenames:
                filename = os.path.abspath(os.path.join(parent, project_filename))
                if os.path.isfile(filename):
                    yield filename
                    found_config_files = True
                    self.local_directory = parent
            (parent, tail) = os.path.split(parent)

    def local_configs(self) -> configparser.RawConfigParser:
        """Parse all local config files into one config object."""
        config, _ = self._read_config(*self.generate_possible_local_files())
        return config

    def user_config(self) -> configparser.RawConfigParser:
        """Parse the user config file into a config object."""
        config, _ = self._read_config(self.user_config_file)
        return config


class MergedConfigParser:
    """Merge local and user configuration files, local options win.

    Adapted from:
    - https://github.com/catalyst-team/catalyst (Apache-2.0 License)
    """

    def __init__(self, config_finder: ConfigFileFinder):
        """Initialize the MergedConfigParser instance.

        Parameters
        ----------
        config_finder:
            initialized ConfigFileFinder
        """
        self.program_name = config_finder.program_name
        self.config_finder = config_finder

    def _parse_config(self, config_parser: configparser.RawConfigParser) -> Dict[str, Any]:
        type2method = {bool: config_parser.getboolean, int: config_parser.getint}

        config_dict: Dict[str, Any] = {}
        if config_parser.has_section(self.program_name):
            for option_name in config_parser.options(self.program_name):
                type_ = _DEFAULT_SETTINGS.type_hint(option_name)
                if type_ is type(None):
                    warnings.warn(f"Unknown option '{option_name}' in [{self.program_name}] section is ignored")
                    continue
                method = type2method.get(type_, config_parser.get)
                config_dict[option_name] = method(self.program_name, option_name)
        return config_dict

    def parse(self) -> Dict[str, Any]:
        """Parse and return the merged local and user options."""
        user_config = self._parse_config(self.config_finder.user_config())
        config = self._parse_config(self.config_finder.local_configs())

        for option, value in user_config.items():
            config.setdefault(option, value)
        return config


_DEFAULT_SETTINGS = Settings(seed=0)

SETTINGS = Settings.parse()

__all__ = ["SETTINGS", "Settings", "ConfigFileFinder", "MergedConfigParser", "SEED_ENV_VARIABLE", "MAX_EXACT_SIZE"]
