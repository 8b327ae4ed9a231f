"""Gaussian simulation of dissipative cluster-state preparation in atomic ensembles."""

from ._core import (
    ConfigError,
    CutoffTooSmall,
    InvalidParameter,
    InvalidTransform,
    NoSteadyState,
    PhysicsError,
    RingclusterError,
    Unphysical,
    __version__,
    analytic_targets,
    builtin_transform,
    check_tables,
    convergence_eigenvalues,
    evolve,
    integrate_two_mode,
    is_cluster,
    nullifier_variances,
    protocol_transform,
    purity,
    quadrature_map,
    run,
    run_protocol,
    steady_state,
    symplectic_eigenvalues,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
