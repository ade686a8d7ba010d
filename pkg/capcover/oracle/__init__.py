from capcover.oracle.bang_harness import EQ2_BAND
from capcover.oracle.bang_harness import MAX_HARNESS_CAPS
from capcover.oracle.bang_harness import eq2_harness
from capcover.oracle.bang_harness import lemma7_harness
from capcover.oracle.containment import ZONE_CRITERION_BAND
from capcover.oracle.containment import distance_outside
from capcover.oracle.containment import sampled_containment
from capcover.oracle.containment import verify_cover
from capcover.oracle.containment import zone_criterion_harness
from capcover.oracle.enclosing import minimal_enclosing_cap_estimate
from capcover.oracle.grid import AGREEMENT_MARGIN_BAND
from capcover.oracle.grid import grid_separability
from capcover.oracle.grid import separability_agreement
from capcover.oracle.reports import OracleReport
from capcover.oracle.reports import OracleVerdict
