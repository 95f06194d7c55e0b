"""Python bindings for the medusa-sim interconnect simulator."""

from ._core import (
    AmountOutOfRange,
    BankConflict,
    Config,
    ConfigError,
    InvalidGeometry,
    MalformedRequest,
    MedusaError,
    SimDeadlock,
    UsageError,
    ValidatedConfig,
    baseline_mux_cost,
    cost_report,
    fifo_bram_cost,
    medusa_mux_cost,
    rotate_left,
    rotate_via_stages,
    run_cli,
    simulate,
    stage_controls,
    validate,
    validate_config,
)


def make_config(**fields):
    """Validated config from keyword overrides; ports default to all lanes."""
    cfg = Config()
    for key, value in fields.items():
        if not hasattr(cfg, key):
            raise UsageError(f"unknown config field {key!r}")
        setattr(cfg, key, value)
    lanes = cfg.w_line // cfg.w_acc if cfg.w_acc else 0
    if "n_read_ports_active" not in fields:
        cfg.n_read_ports_active = lanes
    if "n_write_ports_active" not in fields:
        cfg.n_write_ports_active = lanes
    return validate_config(cfg)


__all__ = [name for name in dir() if not name.startswith("_")]
