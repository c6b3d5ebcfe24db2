from dfsqc.tomography.fidelity import GateFidelityEstimate, haar_states, haar_unitary, mean_gate_fidelity
from dfsqc.tomography.measurement import (
    MeasurementSetting,
    TomographyDataset,
    collect_dataset,
    full_setting_set,
    measurement_probabilities,
    simulate_measurement,
)
from dfsqc.tomography.process import (
    ChiMatrix,
    chi_from_unitary,
    depolarizing_channel,
    logical_input_states,
    process_fidelity,
    process_tomography,
    unitary_channel,
)
from dfsqc.tomography.report import DfsReport, dfs_report
from dfsqc.tomography.state import project_to_physical, reconstruct_state

__all__ = [
    "MeasurementSetting",
    "TomographyDataset",
    "full_setting_set",
    "measurement_probabilities",
    "simulate_measurement",
    "collect_dataset",
    "reconstruct_state",
    "project_to_physical",
    "ChiMatrix",
    "process_tomography",
    "process_fidelity",
    "chi_from_unitary",
    "logical_input_states",
    "depolarizing_channel",
    "unitary_channel",
    "GateFidelityEstimate",
    "haar_states",
    "haar_unitary",
    "mean_gate_fidelity",
    "DfsReport",
    "dfs_report",
]
