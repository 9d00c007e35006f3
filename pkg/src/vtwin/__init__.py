"""Exact computation in virtual twin groups VT_n = KT_n x| S_n."""

from .words import (
    AlphaLetter,
    GeneratorLetter,
    Kind,
    KWord,
    ParseError,
    Permutation,
    VWord,
    alpha,
    alpha_conjugate,
    apply,
    compose,
    invert,
    parse_kword,
    parse_vword,
    pi_of_word,
    rho,
    s,
    theta_of_word,
)
from .racg import NormalForm, RacgPresentation, kt_presentation, twin_presentation
from .structure import (
    SemidirectElement,
    ball_vtn,
    decompose,
    embed_twin,
    equal_vtn,
    fixed_by_rho,
    multiply,
    recompose,
)
from .homs import GenImageMap, GroupTag, is_homomorphism, named

__version__ = "0.1.0"
