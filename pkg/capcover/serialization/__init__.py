from capcover.serialization.certificate_file import certificate_from_dict
from capcover.serialization.certificate_file import certificate_to_dict
from capcover.serialization.certificate_file import load_certificate
from capcover.serialization.certificate_file import read_certificate_seed
from capcover.serialization.certificate_file import save_certificate
from capcover.serialization.certificate_file import verdict_to_dict
from capcover.serialization.files import FORMAT_VERSION
from capcover.serialization.files import atomic_write_text
from capcover.serialization.files import canonical_json_dumps
from capcover.serialization.files import pretty_json_dumps
from capcover.serialization.instance_file import instance_digest
from capcover.serialization.instance_file import instance_from_dict
from capcover.serialization.instance_file import instance_to_dict
from capcover.serialization.instance_file import load_instance
from capcover.serialization.instance_file import save_instance
