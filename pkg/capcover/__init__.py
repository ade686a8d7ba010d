from capcover.settings import SETTINGS  # noqa: E402

__version__ = "0.3.0"
