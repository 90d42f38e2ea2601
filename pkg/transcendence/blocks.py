"""
Block sums over geometric data, and what merging bound-limited blocks could
do to them.
"""

from dataclasses import dataclass
from typing import List

from pairs.structure import UnionFind

ZERO = "zero"
NONZERO = "nonzero"
LIMITED = "limited"


@dataclass
class BlockReport:
    """
    Attributes:
        indices (list[int]): Positions of the block's pairs in the query.
        vector (list[int]): The block's degree vector in lowest terms.
        sum (int): sum n_s d_s over the block.
    """

    indices: List[int]
    vector: List[int]
    sum: int


def block_reports(data, exponents, positions):
    """
    :param positions: Query index of each pair passed to geometric_data.
    """
    reports = []
    for block, vector in zip(data.blocks, data.vectors):
        total = sum(exponents[positions[s]] * d for s, d in zip(block, vector))
        reports.append(BlockReport([positions[s] for s in block], vector, total))
    return reports


def merge_outlook(data, reports):
    """
    ZERO when every block sum vanishes, NONZERO when some sum stays nonzero
    however bound-limited blocks merge, LIMITED otherwise.

    Merged blocks add positive multiples of their sums, so only blocks linked
    by bound-limited tests whose sums have opposite signs can cancel.
    """
    if all(report.sum == 0 for report in reports):
        return ZERO
    owner = {s: j for j, block in enumerate(data.blocks) for s in block}
    links = UnionFind(len(reports))
    for s, t in data.bound_limited:
        links.union(owner[s], owner[t])
    for component in links.blocks():
        signs = {report.sum > 0 for report in (reports[j] for j in component) if report.sum}
        if len(signs) == 1:
            return NONZERO
    return LIMITED
