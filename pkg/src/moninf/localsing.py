"""Local singularity models and their local monodromy.

Each singular point of the degree-d part's zero set at infinity is an
isolated hypersurface singularity in n local coordinates.  Three input
models are supported:

* :class:`BrieskornPham` -- x_1^a_1 + ... + x_n^a_n.  The local monodromy
  is semisimple with eigenvalues e^(2*pi*i*(k_1/a_1 + ... + k_n/a_n)) for
  1 <= k_j <= a_j - 1, and Milnor number prod (a_j - 1).
* :class:`OrdinaryNode` -- the quadratic singularity x_1^2 + ... + x_n^2,
  Milnor number 1, single eigenvalue (-1)^n.
* :class:`ExplicitJordan` -- the local monodromy given directly as a
  Jordan structure (for singularities outside the first two families).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .cyclo import UnitRoot
from .jordan import JordanStructure


@dataclass(frozen=True)
class BrieskornPham:
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(self.exponents)
        if not exps:
            raise ValueError("Brieskorn-Pham model needs at least one exponent")
        for a in exps:
            if not isinstance(a, int) or isinstance(a, bool) or a < 2:
                raise ValueError(f"Brieskorn-Pham exponents must be integers >= 2, got {a}")
        object.__setattr__(self, "exponents", exps)


@dataclass(frozen=True)
class OrdinaryNode:
    pass


@dataclass(frozen=True)
class ExplicitJordan:
    structure: JordanStructure

    def __post_init__(self) -> None:
        if not isinstance(self.structure, JordanStructure):
            raise TypeError("explicit model needs a JordanStructure")
        if not self.structure:
            raise ValueError("explicit local monodromy must not be empty")


SingularityModel = Union[BrieskornPham, OrdinaryNode, ExplicitJordan]


def milnor_number(model: SingularityModel) -> int:
    if isinstance(model, BrieskornPham):
        mu = 1
        for a in model.exponents:
            mu *= a - 1
        return mu
    if isinstance(model, OrdinaryNode):
        return 1
    if isinstance(model, ExplicitJordan):
        return model.structure.total_dim
    raise TypeError(f"unknown singularity model {model!r}")


def local_monodromy(model: SingularityModel, n: int) -> JordanStructure:
    """Jordan structure of the local monodromy in n local coordinates."""
    if n < 1:
        raise ValueError(f"number of local coordinates must be >= 1, got {n}")
    if isinstance(model, BrieskornPham):
        if len(model.exponents) != n:
            raise ValueError(
                f"Brieskorn-Pham model has {len(model.exponents)} exponents, "
                f"expected {n}")
        counts: dict[UnitRoot, int] = {UnitRoot(0, 1): 1}
        for a in model.exponents:
            nxt: dict[UnitRoot, int] = {}
            for root, c in counts.items():
                for k in range(1, a):
                    shifted = root * UnitRoot(k, a)
                    nxt[shifted] = nxt.get(shifted, 0) + c
            counts = nxt
        return JordanStructure({root: {1: c} for root, c in counts.items()})
    if isinstance(model, OrdinaryNode):
        return JordanStructure({UnitRoot(n, 2): {1: 1}})
    if isinstance(model, ExplicitJordan):
        return model.structure
    raise TypeError(f"unknown singularity model {model!r}")


def parse_singularity(data: object) -> tuple[SingularityModel, int]:
    """Parse one singularity entry; returns (model, count)."""
    if not isinstance(data, dict):
        raise ValueError("each singularity must be a JSON object")
    kind = data.get("type")
    count = data.get("count", 1)
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ValueError(f"singularity count must be a positive integer, got {count!r}")
    if kind == "brieskorn":
        allowed = {"type", "exponents", "count"}
        if set(data) - allowed or "exponents" not in data:
            raise ValueError("brieskorn entry must have keys 'type', 'exponents'"
                             " and optionally 'count'")
        exps = data["exponents"]
        if not isinstance(exps, list):
            raise ValueError("brieskorn exponents must be a list")
        return BrieskornPham(tuple(exps)), count
    if kind == "node":
        if set(data) - {"type", "count"}:
            raise ValueError("node entry allows only the keys 'type' and 'count'")
        return OrdinaryNode(), count
    if kind == "explicit":
        allowed = {"type", "jordan", "count"}
        if set(data) - allowed or "jordan" not in data:
            raise ValueError("explicit entry must have keys 'type', 'jordan'"
                             " and optionally 'count'")
        return ExplicitJordan(JordanStructure.from_json(data["jordan"])), count
    raise ValueError(f"unknown singularity type {kind!r}")


def parse_singularities(data: object) -> list[SingularityModel]:
    """Parse the singularity list, expanding each entry's count."""
    if not isinstance(data, list):
        raise ValueError("'singularities' must be a list")
    models: list[SingularityModel] = []
    for entry in data:
        model, count = parse_singularity(entry)
        models.extend([model] * count)
    return models


def singularity_to_json(model: SingularityModel) -> dict[str, object]:
    if isinstance(model, BrieskornPham):
        return {"type": "brieskorn", "exponents": list(model.exponents)}
    if isinstance(model, OrdinaryNode):
        return {"type": "node"}
    if isinstance(model, ExplicitJordan):
        return {"type": "explicit", "jordan": model.structure.to_json()}
    raise TypeError(f"unknown singularity model {model!r}")
