from ._estlab import (
    Error,
    ExponentMode,
    NormKind,
    Region,
    RegionFamily,
    YSign,
    box,
    compare,
    contains,
    count_circle,
    count_est_1d,
    count_kesten_1d,
    count_md,
    diag_flow,
    est_closed_form,
    estimate_alpha_pmf,
    estimate_lattice_pmf,
    haar_lattice,
    lattice_count,
    run_cli,
    shear,
    siegel_expectation,
    volume,
    wedge,
    zeta,
)

__all__ = [name for name in dir() if not name.startswith("_")]
