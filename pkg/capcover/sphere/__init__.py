from capcover.sphere.constants import EPS_FEAS
from capcover.sphere.constants import EPS_GEOM
from capcover.sphere.constants import EPS_UNIT
from capcover.sphere.constants import HALF_PI
from capcover.sphere.duality import cap_to_zone
from capcover.sphere.duality import plank_vector
from capcover.sphere.duality import zone_of_plank_vector
from capcover.sphere.duality import zone_to_antipodal_caps
from capcover.sphere.predicates import cap_contains_cap
from capcover.sphere.predicates import cap_contains_point
from capcover.sphere.predicates import cap_slack
from capcover.sphere.predicates import normals_angle
from capcover.sphere.predicates import spherical_distance
from capcover.sphere.predicates import zone_contains_point
from capcover.sphere.predicates import zone_contains_zone
from capcover.sphere.predicates import zone_slack
from capcover.sphere.sampling import apply_rotation
from capcover.sphere.sampling import fibonacci_sphere
from capcover.sphere.sampling import point_at_distance
from capcover.sphere.sampling import random_point_in_cap
from capcover.sphere.sampling import random_rotation
from capcover.sphere.sampling import sample_cap
from capcover.sphere.sampling import sample_sphere
from capcover.sphere.sampling import sample_zone
from capcover.sphere.shapes import Cap
from capcover.sphere.shapes import Instance
from capcover.sphere.shapes import PlankVector
from capcover.sphere.shapes import Zone
from capcover.sphere.shapes import as_point
from capcover.sphere.shapes import as_vector_array
from capcover.sphere.shapes import canonical_normal
from capcover.sphere.shapes import normalize
