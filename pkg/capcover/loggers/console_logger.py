import sys
from typing import TYPE_CHECKING
from typing import Any
from typing import Dict
from typing import Union

from loguru import logger as _logger

from capcover.loggers.base import BaseLogger

if TYPE_CHECKING:
    from capcover.cover import CoverCertificate


class ConsoleLogger(BaseLogger):
    """Log any events and certificates to stderr output. Uses loguru."""

    def __init__(self):
        """Create instance of ConsoleLogger."""
        super().__init__()
        if 0 in _logger._core.handlers:
            _logger.remove(0)
        self._handler_id = _logger.add(sink=sys.stderr)
        self.logger = _logger.opt(depth=2, lazy=True, colors=False)

    def log(self, msg: Union[str, Dict[str, Any]], **kwargs):
        """
        Log any event to stderr output.

        Parameters
        ----------
        msg:
            Message or dict to log
        kwargs:
            Parameters for changing additional info in log message
        """
        self.logger.patch(lambda r: r.update(**kwargs)).info(msg)

    def log_certificate(self, certificate: "CoverCertificate"):
        """
        Write certificate summary to stderr output.

        Parameters
        ----------
        certificate:
            certificate produced by ``cover_caps``
        """
        summary = certificate.summary()
        verdict = "valid" if summary["valid"] else "INVALID"
        self.logger.info(
            f"Certificate {verdict}: n = {summary['n']}, radius = {summary['radius']:.12g}, "
            f"min slack = {summary['min_slack']:.3e}, merges = {summary['merges']}, "
            f"heuristic = {summary['heuristic_signing']}"
        )

    def log_bench_row(self, row: Dict[str, Any]):
        """Write bench row to stderr output."""
        self.logger.info("bench: " + ", ".join(f"{key} = {value}" for key, value in row.items()))

    def finish_experiment(self, *args, **kwargs):
        """Detach stderr sink."""
        try:
            _logger.remove(self._handler_id)
        except ValueError:
            pass
