from capcover.commands.bench_command import bench
from capcover.commands.check_command import check
from capcover.commands.cover_command import cover
from capcover.commands.gen_command import gen
from capcover.commands.oracle_command import oracle_app
from capcover.commands.plot_command import plot
from capcover.commands.verify_command import verify
