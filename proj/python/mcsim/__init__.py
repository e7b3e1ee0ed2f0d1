"""Hexagonal OFDMA downlink simulator with partial frequency reuse and mobility control."""

from mcsim._core import (
    ChannelParams,
    ConsistencyError,
    DomainError,
    InvalidParameter,
    OutOfCell,
    SimConfig,
    build_plan,
    cells,
    channel_gain_linear,
    interference_set,
    lifetime_factor,
    noise_power_w,
    optimize_alpha,
    path_loss_db,
    per_subcarrier_power_w,
    run_cli,
    run_experiment,
    serving_cell,
    snr_gap,
    w_to_dbm,
)

__all__ = [
    "ChannelParams",
    "ConsistencyError",
    "DomainError",
    "InvalidParameter",
    "OutOfCell",
    "SimConfig",
    "build_plan",
    "cells",
    "channel_gain_linear",
    "interference_set",
    "lifetime_factor",
    "noise_power_w",
    "optimize_alpha",
    "path_loss_db",
    "per_subcarrier_power_w",
    "run_cli",
    "run_experiment",
    "serving_cell",
    "snr_gap",
    "w_to_dbm",
]
