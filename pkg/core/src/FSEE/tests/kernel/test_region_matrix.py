import numpy as np
import pandas as pd
import pytest

from FSEE.kernel.correlation_kernel import CorrelationKernel
from FSEE.kernel.kernel_dump import dump_kernel, kernel_frame, load_kernel_dump
from FSEE.kernel.region_matrix import build_region_matrix
from FSEE.models.fermi_sea import IntervalProductSea
from FSEE.models.region import Region
from FSEE.utils.errors import ConfigError, SizeError


@pytest.mark.unit
class TestRegionMatrix:

    def setup_method(self):
        self.kernel = CorrelationKernel(IntervalProductSea(dimension=1, half_widths=(np.pi / 2,)))

    def test_two_site_block(self):
        matrix = build_region_matrix(self.kernel, Region.cube(1, 2))
        expected = np.array([[0.0, -2.0 / np.pi], [-2.0 / np.pi, 0.0]])
        assert np.allclose(matrix.entries, expected, atol=1e-15)
        assert matrix.n == 2

    def test_toeplitz_path_matches_offset_table(self):
        cube = build_region_matrix(self.kernel, Region.cube(1, 9))
        voxels = build_region_matrix(self.kernel, Region.voxels(np.arange(9)))
        assert np.allclose(cube.entries, voxels.entries, atol=1e-15)

    def test_matrix_is_hermitian(self):
        kernel = CorrelationKernel(IntervalProductSea(dimension=2, half_widths=(1.0, 0.4), centers=(0.5, -0.2)))
        matrix = build_region_matrix(kernel, Region.ball(2, 5))
        assert matrix.hermiticity_residue() == 0.0

    def test_scattered_region(self):
        region = Region.voxels([[0, 0], [3, 1], [-2, 4]])
        kernel = CorrelationKernel(IntervalProductSea(dimension=2, half_widths=(1.0,)))
        matrix = build_region_matrix(kernel, region)
        assert matrix.entries[0, 1] == pytest.approx(kernel.entries([[-3, -1]])[0])

    def test_site_cap(self):
        with pytest.raises(SizeError):
            build_region_matrix(self.kernel, Region.cube(1, 11), cap=10)

    def test_dimension_mismatch(self):
        with pytest.raises(SizeError):
            build_region_matrix(self.kernel, Region.cube(2, 2))


@pytest.mark.unit
class TestKernelDump:

    def setup_method(self):
        self.kernel = CorrelationKernel(IntervalProductSea(dimension=2, half_widths=(1.0, 0.5)))
        self.offsets = [[0, 0], [1, 0], [2, -1], [-3, 4]]

    def test_frame_columns(self):
        frame = kernel_frame(self.kernel, self.offsets)
        assert list(frame.columns) == ["x1", "x2", "re", "im"]
        assert len(frame) == 4

    def test_csv_dump_reloads(self, tmp_path):
        path = tmp_path / "kernel.csv"
        frame = dump_kernel(self.kernel, self.offsets, path)
        assert path.read_text().startswith("# fsee-csv v1 kernel-entry\n")
        loaded = load_kernel_dump(path)
        assert np.allclose(loaded["re"], frame["re"], rtol=1e-11, atol=1e-15)

    def test_npz_dump_reloads(self, tmp_path):
        path = tmp_path / "kernel.npz"
        frame = dump_kernel(self.kernel, self.offsets, path)
        loaded = load_kernel_dump(path)
        pd.testing.assert_frame_equal(loaded, frame, check_dtype=False)

    def test_unknown_suffix(self, tmp_path):
        with pytest.raises(ConfigError):
            dump_kernel(self.kernel, self.offsets, tmp_path / "kernel.txt")
