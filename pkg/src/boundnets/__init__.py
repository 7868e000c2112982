"""Bounded Petri nets and their categorical semantics."""

from .multiset import EMPTY, Multiset, format_multiset, mdiff, mleq, msum, parse_multiset
from .net import (
    PetriNet,
    ReachabilityGraph,
    Transition,
    enabled,
    explore,
    fire,
    fire_sequence,
    is_k_bounded,
    load_net,
    loads_net,
    dumps_net,
    make_net,
)
from .exec_comm import CommMorphism, chi, comm_compose, comm_equal, comm_identity, comm_of_sequence, comm_tensor, enumerate_comm
from .exec_symm import Diagram, enumerate_sym, sym_compose, sym_equal, sym_identity, sym_permutation, sym_symmetry, sym_tensor
from .bounding import (
    COMM,
    FREE,
    FunctorPresentation,
    bound_net,
    check_comonad_laws,
    comult_presentation,
    counit_presentation,
    initial_antimarking,
)
from .categories import EnumeratedCategory, ExecCategory
from .span_semantics import (
    LaxSpanFunctor,
    Span2Cell,
    SpanRep,
    check_lax_coherence,
    external_comm,
    external_indiv,
    gamma,
    span_compose,
    total_category,
)
from .equivalence import (
    IsoWitness,
    check_pullback,
    check_semantics_morphism,
    truncate_exec,
    verify_theorem_comm,
    verify_theorem_indiv,
)

__version__ = "0.1.0"

__all__ = [
    "COMM",
    "CommMorphism",
    "Diagram",
    "EMPTY",
    "EnumeratedCategory",
    "ExecCategory",
    "FREE",
    "FunctorPresentation",
    "IsoWitness",
    "LaxSpanFunctor",
    "Multiset",
    "PetriNet",
    "ReachabilityGraph",
    "Span2Cell",
    "SpanRep",
    "Transition",
    "bound_net",
    "check_comonad_laws",
    "check_lax_coherence",
    "check_pullback",
    "check_semantics_morphism",
    "chi",
    "comm_compose",
    "comm_equal",
    "comm_identity",
    "comm_of_sequence",
    "comm_tensor",
    "comult_presentation",
    "counit_presentation",
    "dumps_net",
    "enabled",
    "enumerate_comm",
    "enumerate_sym",
    "explore",
    "external_comm",
    "external_indiv",
    "fire",
    "fire_sequence",
    "format_multiset",
    "gamma",
    "initial_antimarking",
    "is_k_bounded",
    "load_net",
    "loads_net",
    "make_net",
    "mdiff",
    "mleq",
    "msum",
    "parse_multiset",
    "span_compose",
    "sym_compose",
    "sym_equal",
    "sym_identity",
    "sym_permutation",
    "sym_symmetry",
    "sym_tensor",
    "total_category",
    "truncate_exec",
    "verify_theorem_comm",
    "verify_theorem_indiv",
]
