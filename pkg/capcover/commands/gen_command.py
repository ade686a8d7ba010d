import math
from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from capcover.commands.utils import SEED_OPTION
from capcover.commands.utils import VERBOSE_OPTION
from capcover.commands.utils import command_context
from capcover.commands.utils import emit
from capcover.commands.utils import resolve_seed
from capcover.datasets import gen_chain
from capcover.datasets import gen_random_tree
from capcover.datasets import gen_separable
from capcover.loggers import covlogger
from capcover.serialization import instance_to_dict


class GeneratorKind(str, Enum):
    """Instance generators available from the command line."""

    chain = "chain"
    tree = "tree"
    separable = "separable"


def gen(
    kind: GeneratorKind = typer.Argument(..., help="generator: chain, tree or separable"),
    dim: int = typer.Option(2, "--dim", help="sphere dimension d, caps live on S^d"),
    n: int = typer.Option(3, "--n", help="number of caps (chain and tree)"),
    radius: Optional[float] = typer.Option(None, "--radius", help="chain cap radius in radians, default pi/(4n)"),
    overlap: float = typer.Option(0.0, "--overlap", help="chain overlap factor in [0, 1], 0 is tangent"),
    total_radius: Optional[float] = typer.Option(None, "--total-radius", help="tree sum of radii in radians"),
    seed: Optional[int] = SEED_OPTION,
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="instance file to write, stdout if not set"),
    verbose: bool = VERBOSE_OPTION,
):
    """Generate an instance file.

    \b
    chain      caps along a great circle, consecutive caps tangent or overlapping
    tree       random tree of intersecting caps, radii rescaled below pi/2
    separable  two small caps near antipodal points
    """
    with command_context("gen", verbose):
        seed = resolve_seed(seed)
        if kind is GeneratorKind.chain:
            instance = gen_chain(dim, n, math.pi / (4 * n) if radius is None else radius, overlap, seed=seed)
        elif kind is GeneratorKind.tree:
            instance = gen_random_tree(dim, n, seed=seed, total_radius=total_radius)
        else:
            instance = gen_separable(dim, seed=seed)
        covlogger.log(f"Generated {kind.value} instance: n = {instance.n}, sum of radii = {instance.sum_radii:.12g}")
        emit(instance_to_dict(instance), out)


if __name__ == "__main__":
    typer.run(gen)
