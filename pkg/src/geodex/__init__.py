"""Distance-regular and geodesic-transitive graph toolkit."""
from .autsearch import (are_isomorphic, automorphism_group, canonical_certificate,
                        canonical_labeling, search_automorphisms)
from .graph import (INFINITE, NOT_ANTIPODAL, NOT_BIPARTITE, NOT_DISTANCE_REGULAR, NOT_SRG,
                    NOT_WELL_DEFINED, UNREACHABLE, Graph, IntersectionArray, IntersectionNumbers,
                    SrgParams, Status, bipartition, diameter, distances_from, enumerate_s_arcs,
                    enumerate_s_geodesics, girth, induced_subgraph, intersection_array,
                    intersection_numbers, is_connected, sphere, srg_params)
from .perm import PermGroup, orbit, orbit_partition, schreier_sims, stabilizer
from .quotients import (antipodal_partition, cover_witness, is_cover, quotient_graph,
                        recognize_sdc)
from .symmetry import (Mode, TransitivityReport, is_geodesic_transitive, is_vertex_transitive,
                       local_action, remark_23_forcing, transitivity)

__version__ = "0.1.0"
