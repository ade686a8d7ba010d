from capcover.bang.bang_set import bang_set_array
from capcover.bang.bang_set import bang_set_enumerate
from capcover.bang.cells import a_w_forms
from capcover.bang.cells import in_A_w
from capcover.bang.cells import in_bang_cell
from capcover.bang.cells import is_max_in_translate
from capcover.bang.cells import max_in_translate_gap
from capcover.bang.cells import outside_planks
from capcover.bang.signing import MAX_EXACT_SIZE
from capcover.bang.signing import MaxNormSigner
from capcover.bang.signing import OrientedFamily
from capcover.bang.signing import exact_max_norm
from capcover.bang.signing import max_norm_signing
from capcover.bang.subsets import SubsetViolation
from capcover.bang.subsets import find_minimal_violating_subset
from capcover.bang.subsets import subset_violates
