from capcover.analysis.plotters import SvgCanvas
from capcover.analysis.plotters import plot_instance
