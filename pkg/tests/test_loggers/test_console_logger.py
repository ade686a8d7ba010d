from tempfile import NamedTemporaryFile

from loguru import logger as _logger

from capcover.cover import cover_caps
from capcover.loggers import ConsoleLogger
from capcover.loggers import covlogger
from capcover.separability import check_nonseparable


def _read_lines(name: str):
    with open(name, "r") as in_file:
        return in_file.readlines()


def test_cover_logs_certificate(tangent_chain_instance):
    """Check that cover_caps writes one certificate summary."""
    file = NamedTemporaryFile()
    sink = _logger.add(file.name)
    idx = covlogger.add(ConsoleLogger())
    cover_caps(tangent_chain_instance)
    lines = [line for line in _read_lines(file.name) if "Certificate" in line]
    assert len(lines) == 1
    assert "Certificate valid: n = 3" in lines[0]
    assert "merges = 0" in lines[0]
    covlogger.remove(idx)
    _logger.remove(sink)


def test_separability_check_logging(antipodal_instance):
    """Check that the separability check reports the pattern count and the separating pattern."""
    file = NamedTemporaryFile()
    sink = _logger.add(file.name)
    idx = covlogger.add(ConsoleLogger())
    check_nonseparable(antipodal_instance, n_jobs=1)
    lines = _read_lines(file.name)
    assert "Checking 1 sign patterns over 2 components of 2 caps" in lines[0]
    assert "Separating pattern (1, -1) found after 1 probes" in lines[-1]
    covlogger.remove(idx)
    _logger.remove(sink)


def test_log_bench_row():
    file = NamedTemporaryFile()
    sink = _logger.add(file.name)
    idx = covlogger.add(ConsoleLogger())
    covlogger.log_bench_row({"instance_id": "chain-0-0", "valid": True})
    lines = _read_lines(file.name)
    assert len(lines) == 1
    assert "bench: instance_id = chain-0-0, valid = True" in lines[0]
    covlogger.remove(idx)
    _logger.remove(sink)


def test_removed_logger_is_silent(single_cap_instance):
    file = NamedTemporaryFile()
    sink = _logger.add(file.name)
    idx = covlogger.add(ConsoleLogger())
    covlogger.remove(idx)
    covlogger.log("nothing to see")
    assert _read_lines(file.name) == []
    _logger.remove(sink)
