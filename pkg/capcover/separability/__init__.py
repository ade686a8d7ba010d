from capcover.separability.check import SeparabilityStatus
from capcover.separability.check import SeparabilityVerdict
from capcover.separability.check import check_nonseparable
from capcover.separability.check import dual_cap
from capcover.separability.patterns import MAX_PATTERN_CAPS
from capcover.separability.patterns import SignPattern
from capcover.separability.patterns import caps_intersect
from capcover.separability.patterns import count_patterns
from capcover.separability.patterns import enumerate_patterns
from capcover.separability.patterns import overlap_components
from capcover.separability.solver import PatternFeasibilitySolver
from capcover.separability.solver import PatternProbe
from capcover.separability.solver import ProbeStatus
from capcover.separability.solver import pattern_feasible
from capcover.separability.solver import pattern_margin_debug
