"""Jordan structures of finite-order-spectrum operators, up to conjugacy.

A :class:`JordanStructure` records, for each eigenvalue (a root of unity),
the multiset of Jordan block sizes at that eigenvalue.  This determines the
operator up to conjugation.  The canonical order everywhere is eigenvalues
by increasing angle, block sizes decreasing.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .cyclo import RootExponentVector, UnitRoot


class JordanStructure:
    """Multiset of Jordan blocks, keyed by eigenvalue then block size."""

    __slots__ = ("_blocks",)

    def __init__(self,
                 blocks: Mapping[UnitRoot, Mapping[int, int]] = ()) -> None:
        canon: dict[UnitRoot, dict[int, int]] = {}
        items = blocks.items() if isinstance(blocks, Mapping) else blocks
        for root, sizes in items:
            if not isinstance(root, UnitRoot):
                raise TypeError(f"eigenvalue must be a UnitRoot, got {root!r}")
            acc: dict[int, int] = {}
            for size, count in sizes.items():
                if not isinstance(size, int) or size < 1:
                    raise ValueError(f"block size must be a positive integer, got {size}")
                if not isinstance(count, int) or count < 0:
                    raise ValueError(f"block count must be a nonnegative integer, got {count}")
                if count:
                    acc[size] = acc.get(size, 0) + count
            if acc:
                prev = canon.setdefault(root, {})
                for size, count in acc.items():
                    prev[size] = prev.get(size, 0) + count
        object.__setattr__(self, "_blocks", {
            root: {size: canon[root][size] for size in sorted(canon[root], reverse=True)}
            for root in sorted(canon)
        })

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("JordanStructure is immutable")

    @classmethod
    def from_blocks(cls, pairs: Iterable[tuple[UnitRoot, int]]) -> JordanStructure:
        """Build from (eigenvalue, block size) pairs, one block per pair."""
        acc: dict[UnitRoot, dict[int, int]] = {}
        for root, size in pairs:
            sizes = acc.setdefault(root, {})
            sizes[size] = sizes.get(size, 0) + 1
        return cls(acc)

    @classmethod
    def from_eigenvalues(cls, roots: Iterable[UnitRoot]) -> JordanStructure:
        """Semisimple structure: one size-1 block per listed eigenvalue."""
        return cls.from_blocks((root, 1) for root in roots)

    def direct_sum(self, other: JordanStructure) -> JordanStructure:
        merged: dict[UnitRoot, dict[int, int]] = {
            root: dict(sizes) for root, sizes in self._blocks.items()
        }
        for root, sizes in other._blocks.items():
            dst = merged.setdefault(root, {})
            for size, count in sizes.items():
                dst[size] = dst.get(size, 0) + count
        return JordanStructure(merged)

    def __add__(self, other: JordanStructure) -> JordanStructure:
        if not isinstance(other, JordanStructure):
            return NotImplemented
        return self.direct_sum(other)

    def sharp(self, alpha: UnitRoot, size: int) -> int:
        """Number of Jordan blocks of exactly the given size at alpha."""
        return self._blocks.get(alpha, {}).get(size, 0)

    def block_count(self, alpha: UnitRoot) -> int:
        """Total number of Jordan blocks at alpha, over all sizes."""
        return sum(self._blocks.get(alpha, {}).values())

    def multiplicity(self, alpha: UnitRoot) -> int:
        """Algebraic multiplicity of alpha: sum of its block sizes."""
        return sum(size * count for size, count in self._blocks.get(alpha, {}).items())

    def blocks_at(self, alpha: UnitRoot) -> dict[int, int]:
        """Copy of the size -> count table at alpha (empty if absent)."""
        return dict(self._blocks.get(alpha, {}))

    def sizes_at(self, alpha: UnitRoot) -> list[int]:
        """Block sizes at alpha, decreasing, with multiplicity."""
        out: list[int] = []
        for size, count in self._blocks.get(alpha, {}).items():
            out.extend([size] * count)
        return out

    def spectrum(self) -> list[UnitRoot]:
        """Distinct eigenvalues, by increasing angle."""
        return list(self._blocks)

    def iter_blocks(self) -> Iterator[tuple[UnitRoot, int, int]]:
        """(eigenvalue, size, count) triples in canonical order."""
        for root, sizes in self._blocks.items():
            for size, count in sizes.items():
                yield root, size, count

    @property
    def total_dim(self) -> int:
        return sum(size * count for _, sizes in self._blocks.items()
                   for size, count in sizes.items())

    def max_block_size(self) -> int:
        return max((size for _, sizes in self._blocks.items() for size in sizes),
                   default=0)

    def is_semisimple(self) -> bool:
        return self.max_block_size() <= 1

    def char_poly(self) -> RootExponentVector:
        """Characteristic polynomial prod (x - alpha)^multiplicity."""
        return RootExponentVector(
            (root, self.multiplicity(root)) for root in self._blocks
        )

    def is_conjugation_symmetric(self) -> bool:
        """True when the block data at alpha and at conj(alpha) agree."""
        return all(self._blocks[root] == self._blocks.get(root.conjugate(), {})
                   for root in self._blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JordanStructure):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self) -> int:
        return hash(tuple((root, tuple(sizes.items()))
                          for root, sizes in self._blocks.items()))

    def __bool__(self) -> bool:
        return bool(self._blocks)

    def __repr__(self) -> str:
        inner = ", ".join(f"'{root}': {self.sizes_at(root)}"
                          for root in self._blocks)
        return f"JordanStructure({{{inner}}})"

    def to_json(self) -> list[dict[str, object]]:
        """JSON form: [{"eigenvalue": "num/den", "blocks": [sizes desc]}]."""
        return [{"eigenvalue": str(root), "blocks": self.sizes_at(root)}
                for root in self._blocks]

    @classmethod
    def from_json(cls, data: object) -> JordanStructure:
        if not isinstance(data, list):
            raise ValueError("jordan data must be a list of eigenvalue entries")
        acc: dict[UnitRoot, dict[int, int]] = {}
        for entry in data:
            if not isinstance(entry, dict) or set(entry) != {"eigenvalue", "blocks"}:
                raise ValueError(
                    "each jordan entry must be an object with exactly "
                    "the keys 'eigenvalue' and 'blocks'")
            root = UnitRoot.parse(entry["eigenvalue"])
            if root in acc:
                raise ValueError(f"duplicate eigenvalue {root} in jordan data")
            blocks = entry["blocks"]
            if (not isinstance(blocks, list) or not blocks
                    or not all(isinstance(b, int) and not isinstance(b, bool)
                               and b >= 1 for b in blocks)):
                raise ValueError(
                    f"blocks for {root} must be a nonempty list of positive integers")
            sizes: dict[int, int] = {}
            for b in blocks:
                sizes[b] = sizes.get(b, 0) + 1
            acc[root] = sizes
        return cls(acc)
