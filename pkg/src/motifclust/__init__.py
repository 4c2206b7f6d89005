"""Motif-based spectral graph clustering.

Build a pattern adjacency that counts anchored motif occurrences between
vertex pairs (exactly, or through a noise-modelled approximate counter),
cluster its Laplacian spectrum, and audit the whole pipeline: structural
cut identities, spectral sandwich bounds, normalized-clustering caveats,
and query-cost comparisons of counting strategies.
"""

from .graph import (Graph, GraphFormatError, adjacency_matrix, emit_graph, has_edge,
                    max_degree, neighborhood, parse_graph, perturb_weights)
from .motif import (Motif, MotifFormatError, SymmetryProfile, TreeSplit,
                    TwoAnchorDecomposition, anchor_distance, emit_motif, named_motif,
                    parse_motif, spanning_tree_split, symmetry_profile,
                    two_anchor_decomposition)
from .engine import (MotifGraph, MotifInstance, Provenance, assignment_census,
                     brute_force_instances, build_motif_graph_approx,
                     build_motif_graph_exact, build_motif_graph_multi, conductance,
                     conductance_set, emit_motif_graph, enumerate_instances,
                     exact_pair_count, graph_cut, graph_vol, match, motif_conductance,
                     motif_cut, motif_ratio_cut, motif_vol, ratio_cut, ratio_cut_set,
                     tree_walk)
from .counting import ExactCounter, NoisyCounter, QueryLedger
from .costs import (CostReport, PowerLawRegime, algorithm_costs, approx_count_cost,
                    crossover_tau0, crossover_tau1, find_all_cost, grover_cost,
                    powerlaw_analysis)
from .spectral import (LaplacianPair, Partition, build_laplacians, lloyd_kmeans,
                       nogo_certificate, normalized_nogo_witness, sandwich_check,
                       smallest_k_eigenpairs, spectral_cluster,
                       MODE_CONDUCTANCE, MODE_RATIO_CUT)
from .generators import (CirclesSample, ClusterSample, CommunitySample,
                         HiddenVariableSample, gen_circles, gen_cluster_graph,
                         gen_community_graph, gen_powerlaw_graph, tail_exponent)
from .experiments import (PhiDiffRecord, PhiDiffSummary, phi_diff_experiment,
                          records_csv, run_trial, spearman_rank_correlation,
                          summarize, summary_csv, trial_seeds)
from .checks import CheckResult, run_checks

__version__ = "0.1.0"
