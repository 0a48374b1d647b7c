"""Lablet controller emulator and multi-lablet simulator."""

from labletsim._core import (
    ConditionAction,
    Lablet,
    LabletProgram,
    PhaseConfig,
    assemble,
    condition_name,
    decode_hex,
    disassemble,
    divergence_csv_of,
    encode_bits_string,
    encode_hex,
    eval_condition,
    frame_at,
    mv_per_ph,
    pair_catalogue,
    rep_count,
    run_scenario,
    sensor_bits,
    sequence_select,
    step_multiplier,
    trace_to_vcd,
    validate,
    variant_names,
)

__all__ = [
    "ConditionAction",
    "Lablet",
    "LabletProgram",
    "PhaseConfig",
    "assemble",
    "condition_name",
    "decode_hex",
    "disassemble",
    "divergence_csv_of",
    "encode_bits_string",
    "encode_hex",
    "eval_condition",
    "frame_at",
    "mv_per_ph",
    "pair_catalogue",
    "rep_count",
    "run_scenario",
    "sensor_bits",
    "sequence_select",
    "step_multiplier",
    "trace_to_vcd",
    "validate",
    "variant_names",
]
