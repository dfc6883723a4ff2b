from FSEE.scaling.fit import as_frame, fit_scaling, ratio_table, sandwich_report
from FSEE.scaling.sweep import SweepPipeline, check_L_list, sweep

__all__ = [
    "SweepPipeline",
    "as_frame",
    "check_L_list",
    "fit_scaling",
    "ratio_table",
    "sandwich_report",
    "sweep",
]
