from FSEE.kernel.cell_grid import CellGrid
from FSEE.kernel.correlation_kernel import CorrelationKernel, KernelMode, gamma_entry
from FSEE.kernel.kernel_dump import dump_kernel, kernel_frame, load_kernel_dump
from FSEE.kernel.region_matrix import DEFAULT_SITE_CAP, RegionMatrix, build_region_matrix

__all__ = [
    "CellGrid",
    "CorrelationKernel",
    "DEFAULT_SITE_CAP",
    "KernelMode",
    "RegionMatrix",
    "build_region_matrix",
    "dump_kernel",
    "gamma_entry",
    "kernel_frame",
    "load_kernel_dump",
]
