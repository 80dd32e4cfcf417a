"""Graph library for approximate all-nodes shortest cycles (per-vertex
shortest cycle lengths), n-pairs shortest paths, spanner constructions,
and hardness-gadget generators, with exact oracles for validation."""

from .graph import (Graph, GraphError, ParseError, PairQuerySet, VertexMap,
                    degree_uniformize, gen_random, load_graph, loads_graph,
                    dumps_graph, restrict_edges, save_graph, INF)
from .sssp import (DistTree, HittingSample, TruncationPolicy, dijkstra,
                   multi_source_dijkstra, sample_hitting)
from .linkcut import PathMinForest
from .cycle_est import (CedRun, CycleEstimates, cycle_estimation_dijkstra,
                        cycle_estimation_run, merge)
from .spanners import (Spanner, fault_tolerant_spanner, spanner_2k_minus_1,
                       spanner_composite_2eps, spanner_k_kminus1,
                       spanner_near_additive)
from .ansc import (AnscResult, EdgeBallIndex, ansc_2approx, ansc_2eps,
                   ansc_6_1, ansc_k2, ansc_k_approx, ansc_near_opt,
                   ansc_small_cycles, edge_ball_index, exact_ansc,
                   exact_ansc_directed)
from .npsp import (NpspResult, StInstance, TzOracle, build_tz_oracle,
                   exact_npsp, npsp_2eps, npsp_spanner_compose, npsp_tz,
                   recover_reduced_distances, reduce_npsp_to_ansc,
                   st_shortest_paths)
from .gadgets import (GadgetInstance, gadget_clique_reduction, gadget_layered,
                      planted_base)
from .report import RunReport

__version__ = "0.1.0"
