from capcover.datasets.instances_generation import gen_chain
from capcover.datasets.instances_generation import gen_random_tree
from capcover.datasets.instances_generation import gen_separable
