from typer import Typer

from capcover.commands import bench
from capcover.commands import check
from capcover.commands import cover
from capcover.commands import gen
from capcover.commands import oracle_app
from capcover.commands import plot
from capcover.commands import verify

app = Typer(help="Cover non-separable families of spherical caps by one cap of radius equal to the sum of radii.")
app.command()(gen)
app.command()(check)
app.command()(cover)
app.command()(verify)
app.command()(plot)
app.command()(bench)
app.add_typer(oracle_app, name="oracle")


if __name__ == "__main__":
    app()
