"""Exact GKM computations for regular semisimple (partial) Hessenberg varieties."""

from .errors import (
    HessGKMError,
    InvalidIdeal,
    InvalidRoot,
    InvalidSpec,
    ModeError,
    NegativeBetti,
    NotAutomorphism,
    NotThetaIdeal,
    TooLarge,
    UnsupportedType,
)
from .gkm import FULL, PARTIAL, build_fiber_graph, build_gkm
from .hessenberg import (
    HessIdeal,
    enumerate_theta_ideals,
    full_ideal,
    make_ideal,
    minimal_ideal,
    simple_ideal,
    validate_theta_ideal,
)
from .rootsys import RootSystem, WeylGroup, build_root_system, parabolic, weyl_group

__version__ = "0.1.0"
