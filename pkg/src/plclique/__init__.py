"""Power-law random graphs G(n, alpha) and their large cliques."""

from .cliques import (CliqueResult, count_k4, count_triangles, degree_order,
                      full_top_clique, greedy_clique, is_clique, max_clique_exact,
                      quasi_top_clique, weight_order)
from .errors import BudgetExceeded, EdgeBudgetError, ValidationError
from .graph import Graph
from .model import ModelParams, edge_probability, intensity, rescale_params
from .sampler import (collapse_multigraph, heavy_vertex_set, sample_multigraph_fast,
                      sample_pairwise, sample_simple_fast, sample_variant_fast)
from .weights import (WeightParams, WeightVector, deterministic_weights,
                      rank_by_weight, sample_iid_pareto)

__version__ = "0.1.0"
