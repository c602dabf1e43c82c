"""K4-bootstrap percolation: closures, clique process, small-graph censuses,
threshold constants and G(n, p) experiments."""

__version__ = "0.1.0"

from .bootstrap import (has_seed_edge, is_contagious, is_seed_edge, k4_closure_naive,
                        percolates, two_neighbour_closure)
from .clique_process import (MergeEvent, ProcessState, k4_closure_fast,
                             largest_percolating_clique, run_clique_process)
from .graph import (Graph, GraphError, ResourceGuardError, graph_from_edge_list,
                    induced_subgraph, read_edge_list, sample_gnp, write_edge_list)
from .structure import (CoreDecomposition, core_decomposition, excess, graph_stats,
                        is_irreducible)
