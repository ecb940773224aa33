"""Prohibition engine for real schemes of curves on the ellipsoid and hyperboloid."""

from __future__ import annotations

__version__ = "0.1.0"

from .congruence import (
    CurveType,
    classify,
    classify_scheme,
    theorem1_verdict,
    theorem2a_verdict,
    theorem2b_verdict,
)
from .enumerator import FilterConfig, apply_filters, bezout_triple_bound, enumerate_schemes, harnack_bound
from .errors import CapExceeded, InputError, InvariantBreach, OvalSieveError
from .hyperboloid import check_b4_b7, check_b10, euler_integral, index_function, make_arrangement, netsvetaev_b12
from .scheme import (
    SphereScheme,
    euler_parts,
    parse_oriented_scheme,
    parse_plane_scheme,
    parse_scheme,
    plane_euler_parts,
    render_canonical,
    x_of_oval,
)
from .singularities import CUSP_ARF, arf_of_sequence, prop_a1_verdict
from .verdict import Reason, Status, Verdict
from .z4forms import Z4Form, brown_invariant, gauss_sum, isotropic_reduce

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
