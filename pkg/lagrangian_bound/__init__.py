from .sub_instance import SubInstance, build_route_sub_instance, sub_instance_from_costs
from .one_tree import OneTree, helsgaun_lower_bound, nearest_neighbour_tour, one_tree
