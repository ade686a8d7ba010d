from capcover.core.exceptions import CapCoverError
from capcover.core.exceptions import ConstructionError
from capcover.core.exceptions import CoverFailureError
from capcover.core.exceptions import DiagnosticError
from capcover.core.exceptions import HypothesisError
from capcover.core.exceptions import InternalInvariantError
from capcover.core.exceptions import MalformedFileError
from capcover.core.exceptions import SeparableInputError
from capcover.core.exceptions import UndecidedSeparabilityError
from capcover.core.exceptions import UnsupportedSizeError
from capcover.core.exceptions import ValidationError
from capcover.core.mixins import BaseMixin
