"""Numerical toolkit for theta_alpha-slant curves and f-biharmonicity in
the coordinate-model S-space form R^(2m+s)(-3s).

Submodules
----------
manifold    structure tensors, metric, connection, curvature (+ FD oracles)
curve       curve traces, exact covariant chains, Frenet apparatus
slant       contact angles, slant constants, phi T decomposition
biharmonic  bitension fields, master equations, four-case classification
odesol      the governing autonomous ODE: closed forms vs RK4 oracle
synth       curve synthesis (prescribed-curvature Frenet flow, steering)
cli         verify / synth / ode command-line front end
"""
from .manifold import ModelParams, Point, Tangent, verify_structure
from .curve import CurveTrace, FrenetData, frenet_apparatus, unit_speed_check
from .slant import SlantProfile, contact_angles, phiT_decomposition
from .biharmonic import BiharmonicReport, WeightFunction, check_conditions
from .odesol import OdeSolutionSpec, k1_closed_form, numeric_solution_oracle
from .synth import SynthesisSpec, integrate_frenet_system, builtin_example_r6

__version__ = "0.1.0"

__all__ = [
    "ModelParams", "Point", "Tangent", "verify_structure",
    "CurveTrace", "FrenetData", "frenet_apparatus", "unit_speed_check",
    "SlantProfile", "contact_angles", "phiT_decomposition",
    "BiharmonicReport", "WeightFunction", "check_conditions",
    "OdeSolutionSpec", "k1_closed_form", "numeric_solution_oracle",
    "SynthesisSpec", "integrate_frenet_system", "builtin_example_r6",
    "__version__",
]
