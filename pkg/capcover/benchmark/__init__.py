from omegaconf import OmegaConf

from capcover.benchmark.resolvers import pi
from capcover.benchmark.suite import BENCH_COLUMNS
from capcover.benchmark.suite import BUILTIN_SUITES
from capcover.benchmark.suite import BenchSuite
from capcover.benchmark.suite import load_suite
from capcover.benchmark.suite import run_suite
from capcover.benchmark.suite import save_bench

if not OmegaConf.has_resolver("pi"):
    OmegaConf.register_new_resolver("pi", pi)
