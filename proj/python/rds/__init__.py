"""Conservative, positivity-preserving solver for the reversible reaction-diffusion
system alpha U + beta V <=> gamma W, with regime classification and lemma checks."""

import json as _json
from pathlib import Path as _Path

from ._core import (  # noqa: F401
    Boundary,
    ConfigError,
    ContractError,
    DivisionDomainError,
    Grid,
    InfeasibleInvariants,
    OracleStepTooLarge,
    Params,
    classify,
    cmd_classify,
    cmd_convergence,
    cmd_run,
    cmd_sweep,
    cmd_verify_lemmas,
    equilibrium,
    heat_semigroup,
    heat_step_implicit,
    laplacian_apply,
    norm_p,
    normalize_config,
    ode_oracle,
    reaction_rate,
    smoothing_ratio,
)
from ._core import run_scenario as _run_scenario


def run_scenario(config, base_dir=""):
    """Run a scenario given as a dict, a JSON string, or a path to a JSON file."""
    if isinstance(config, dict):
        return _run_scenario(_json.dumps(config), str(base_dir))
    path = _Path(config) if not str(config).lstrip().startswith("{") else None
    if path is not None and path.exists():
        return _run_scenario(path.read_text(), str(base_dir or path.parent))
    return _run_scenario(str(config), str(base_dir))
