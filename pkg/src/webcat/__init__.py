"""webcat: dotted web diagrams, their chicken-foot normal forms and exact checks.

Typical use::

    >>> import webcat as wc
    >>> m = wc.parse("split(1,1);merge(1,1)")
    >>> wc.normalize(m).to_json()
    '{"source":[2],"target":[2],"terms":[{"coeff":"2","A":[[2]],"P":[[[]]]}]}'

Submodules: combinatorics, diagram, rules, normalizer, rep_oracle, hecke,
suites and cli.
"""

from .combinatorics import binomial, composition, partition
from .diagram import (
    BoundaryError,
    Diagram,
    Morphism,
    ParseError,
    compose,
    cross,
    dot,
    id_,
    identity,
    merge,
    packet,
    parse,
    split,
    stack,
    tensor,
    tensor_all,
    wdot,
)
from .normalizer import (
    ElementaryCFD,
    LevelParams,
    NormalForm,
    NormalizationError,
    RingError,
    cfd_to_diagram,
    cyclotomic_normalize,
    enumerate_cfds,
    graded_dimension,
    make_cfd,
    multiply_normal,
    normalize,
)
from .rep_oracle import RepParams, evaluate, hom_rank, oracle_normalize, oracle_params
from .rules import catalog, check_rule, get_rule
from .hecke import embed_affine_hecke, hecke_rank, perm_module_hom_dim, wschur_dim_check

__version__ = "0.1.0"

__all__ = [
    "binomial", "composition", "partition",
    "BoundaryError", "Diagram", "Morphism", "ParseError",
    "compose", "cross", "dot", "id_", "identity", "merge", "packet", "parse",
    "split", "stack", "tensor", "tensor_all", "wdot",
    "ElementaryCFD", "LevelParams", "NormalForm", "NormalizationError", "RingError",
    "cfd_to_diagram", "cyclotomic_normalize", "enumerate_cfds", "graded_dimension",
    "make_cfd", "multiply_normal", "normalize",
    "RepParams", "evaluate", "hom_rank", "oracle_normalize", "oracle_params",
    "catalog", "check_rule", "get_rule",
    "embed_affine_hecke", "hecke_rank", "perm_module_hom_dim", "wschur_dim_check",
]
