"""
Vertex sets as integer bitmasks: bit i set means vertex i is a member.
"""

from typing import Iterable, Iterator, List

VertexSet = int


def mask_of(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: VertexSet) -> Iterator[int]:
    """Yield member indices in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: VertexSet) -> List[int]:
    return list(iter_bits(mask))


def lowest(mask: VertexSet) -> int:
    """Index of the least member; mask must be non-empty."""
    return (mask & -mask).bit_length() - 1


def is_subset(a: VertexSet, b: VertexSet) -> bool:
    return a & ~b == 0


def submasks(mask: VertexSet) -> Iterator[VertexSet]:
    """Every subset of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def canonical_key(mask: VertexSet):
    """Sort key: cardinality first, then bitmask value."""
    return (mask.bit_count(), mask)
