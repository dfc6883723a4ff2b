"""
Spin versus fermion block entropies of the same chain, one pipeline item per N.
"""

from typing import List, Optional, Sequence

import numpy as np

from FSEE.entropy.binary_entropy import DEFAULT_BASE
from FSEE.jw.fermion_chain import chain_matrix, fermion_chain_entropy, free_fermion_many_body_spectrum
from FSEE.jw.spin_chain import SpinChainSpec, ground_space, spin_ground_entropy, spin_spectrum
from FSEE.models.reports import JWCheckRow
from FSEE.pipelines.base_pipeline import BasePipeline, SequenceSource
from FSEE.pipelines.validation import EntropyAgreementValidator
from FSEE.utils.errors import DomainError, NumericError
from FSEE.utils.logs import event, get_logger

L = get_logger()


def jw_rows(N: int, m: Optional[int] = None, blocks: Optional[Sequence[int]] = None,
            T0: float = 0.0, T1: complex = 1.0, base: float = DEFAULT_BASE) -> List[JWCheckRow]:
    """Rows for one chain; defaults are half filling and blocks 1..N/2."""
    m = N // 2 if m is None else m
    blocks = list(range(1, N // 2 + 1)) if blocks is None else list(blocks)
    if not blocks:
        raise DomainError(f"No blocks to compare for N = {N}")
    spec = SpinChainSpec.from_hopping(N, T0, T1)
    T = chain_matrix(N, T0, T1)
    ground = ground_space(spec, sector=m)
    rows = []
    for block in blocks:
        rows.append(JWCheckRow(
            N=N, m=m, block=block,
            spin=spin_ground_entropy(spec, block, sector=m, base=base, ground=ground),
            fermion=fermion_chain_entropy(T, m, block, base=base),
        ))
    return rows


def spectrum_deviation(N: int, T0: float = 0.0, T1: complex = 1.0) -> float:
    """max |eig(H_spin) + N T0 / 2 - subset sums| for an N <= 8 chain."""
    spin = spin_spectrum(SpinChainSpec.from_hopping(N, T0, T1)) + N * T0 / 2.0
    fermion = free_fermion_many_body_spectrum(chain_matrix(N, T0, T1))
    return float(np.max(np.abs(spin - fermion)))


class JWCheckPipeline(BasePipeline[int, List[JWCheckRow]]):
    def __init__(self, N_list: Sequence[int], m: Optional[int] = None, blocks: Optional[Sequence[int]] = None,
                 T0: float = 0.0, T1: complex = 1.0, base: float = DEFAULT_BASE, threads: int = 1):
        super().__init__(
            name="jw-check",
            source=SequenceSource(f"chain:t0={T0};t1={T1}", N_list),
            validators=[EntropyAgreementValidator(strict=False)],
            threads=threads,
        )
        self.m = m
        self.blocks = blocks
        self.T0 = T0
        self.T1 = T1
        self.base = base
        self.rows: List[JWCheckRow] = []

    def process_item(self, N: int) -> List[JWCheckRow]:
        rows = jw_rows(N, self.m, self.blocks, self.T0, self.T1, self.base)
        L.info(event("jw_rows", N=N, m=rows[0].m, max_deviation=max(r.deviation for r in rows)))
        return rows

    def store_item(self, item: List[JWCheckRow]) -> bool:
        self.rows.extend(item)
        return True


def jw_check(N_list: Sequence[int], m: Optional[int] = None, blocks: Optional[Sequence[int]] = None,
             T0: float = 0.0, T1: complex = 1.0, base: float = DEFAULT_BASE, threads: int = 1) -> List[JWCheckRow]:
    pipeline = JWCheckPipeline(N_list, m, blocks, T0, T1, base, threads)
    result = pipeline.run()
    for warning in result.warnings:
        L.warning(event("jw_warning", message=warning))
    if result.errors:
        raise NumericError(f"JW check failed: {'; '.join(result.errors)}")
    return pipeline.rows
