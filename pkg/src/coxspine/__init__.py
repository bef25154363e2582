"""Computational toolkit for the universal Coxeter group W_n, its marked
graphs of groups, the star-graph spine, vertex links, and free splittings."""

from .words import (Automorphism, ConjGen, Word, compose, conj_gen,
                    conjugate, conjugate_cg, identity, inner, inverse,
                    invert, is_inner, make_automorphism, multiply,
                    outer_normal_form, parse_conj_gen, reduce_word,
                    same_outer_class, sigma, transposition, whitehead_move)
from .graphs import (CollapseError, FactorPartition, InvariantError,
                     MarkedGraph, act, all_edge_partitions, canonical_key,
                     canonical_lift, canonicalize, collapse, collapses_onto,
                     edge_partition, equivalent, factor_partition,
                     graph_from_json, graph_to_dot, graph_to_json,
                     make_graph, one_edge_blowups, partition_contains,
                     standard_zero_star)
from .spine import (Ball, BudgetExceeded, KIND_F_STAR, KIND_OTHER,
                    KIND_ZERO_STAR, SpineVertex, TwistVector, arc_existence,
                    ball, ball_to_dot, ball_to_json, bounded_twistor_sets,
                    classify_kind, count_arcs, first_term_complexity,
                    ln_neighbors, second_term_all, second_term_complexity,
                    spine_vertex, star_fixing_automorphisms, twist_vector,
                    twist_vectors, verify_star_rigidity)
from .links import (LinkGraph, classify, join_decompositions, kn_ball,
                    kn_neighbors, link_graph, link_to_dot, link_to_json,
                    linked, negative_link, positive_link,
                    positive_link_bounded, positive_link_depth1)
from .splittings import (FreeSplitting, Profile, as_marked_graph,
                         canonical_splitting, collapse_splitting, compatible,
                         common_refinement, enumerate_splittings,
                         equivalent_splittings, from_marked_graph,
                         is_F_one_edge, is_spine_vertex, make_splitting,
                         neighbor_stream, one_edge_collapses,
                         rigidity_profile, splitting_from_json,
                         splitting_from_partition, splitting_key,
                         splitting_to_dot, splitting_to_json,
                         two_edge_refinements)
from .verify import SUITES, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
