from capcover.cover.merge import MergeStep
from capcover.cover.merge import merge_slacks
from capcover.cover.merge import merge_zones
from capcover.cover.pipeline import CoverCertificate
from capcover.cover.pipeline import CoverOptions
from capcover.cover.pipeline import cover_caps
from capcover.cover.reduction import TRACK_SEPARABILITY_MAX_SIZE
from capcover.cover.reduction import CoveringZone
from capcover.cover.reduction import Reduction
from capcover.cover.reduction import covering_zone
from capcover.cover.reduction import reduce_to_small_w
