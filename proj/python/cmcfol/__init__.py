"""Constant mean curvature foliations: profiles, Reeb-type components, torus model."""

import json

from . import _core
from ._core import (
    DomainError,
    EnlargedReebComponent,
    IoError,
    LeafwiseVanishingError,
    PreconditionError,
    ProfileParams,
    RadialProfile,
    TurbModelSurface,
    arc_length,
    choose_lambda,
    first_integral,
    graph_integrate,
    h_closed_form,
    integrate,
    phi_closed_form,
    torus_summary,
)

__all__ = [
    "DomainError",
    "EnlargedReebComponent",
    "IoError",
    "LeafwiseVanishingError",
    "PreconditionError",
    "ProfileParams",
    "RadialProfile",
    "TurbModelSurface",
    "arc_length",
    "choose_lambda",
    "first_integral",
    "graph_integrate",
    "h_closed_form",
    "integrate",
    "phi_closed_form",
    "torus_summary",
    "profile_suite",
    "ode_suite",
    "reeb_suite",
    "turb_suite",
    "torus_suite",
]


def profile_suite(profile):
    return json.loads(_core.profile_suite(profile))


def ode_suite(profile, seed=20240611, random_starts=50):
    return json.loads(_core.ode_suite(profile, seed, random_starts))


def reeb_suite(component, seed=20240611, partition_points=10000):
    return json.loads(_core.reeb_suite(component, seed, partition_points))


def turb_suite(surface, seed=20240611):
    return json.loads(_core.turb_suite(surface, seed))


def torus_suite(Nx=512, Ny=64):
    return json.loads(_core.torus_suite(Nx, Ny))
