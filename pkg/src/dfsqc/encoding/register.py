import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dfsqc.toolkit.errors import DimensionError, LayoutError

logger = logging.getLogger(__name__)


class LogicalRegister(BaseModel):
    """
    Ion string carrying logical qubits in pairs.

    Each pair ``(a, b)`` encodes |0>_L = |1>_a|0>_b and |1>_L = |0>_a|1>_b.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    pairs: list[tuple[int, int]] = Field(min_length=1)
    n_physical: int | None = Field(default=None, ge=2)

    @model_validator(mode="after")
    def _check_layout(self) -> "LogicalRegister":
        ions = [ion for pair in self.pairs for ion in pair]
        if len(set(ions)) != len(ions):
            raise ValueError(f"pairs must be disjoint, got {self.pairs}")
        if min(ions) < 0:
            raise ValueError(f"ion indices must be non-negative, got {self.pairs}")
        if self.n_physical is None:
            object.__setattr__(self, "n_physical", max(ions) + 1)
        elif max(ions) >= self.n_physical:
            raise ValueError(f"pair ion {max(ions)} outside a string of {self.n_physical} ions")
        return self

    @classmethod
    def linear(cls, n_logical: int) -> "LogicalRegister":
        """Pairs (0, 1), (2, 3), ... filling a string of 2 * n_logical ions"""
        return cls(pairs=[(2 * k, 2 * k + 1) for k in range(n_logical)], n_physical=2 * n_logical)

    @classmethod
    def for_dimension(cls, dim: int) -> "LogicalRegister":
        n_physical = int(round(np.log2(dim))) if dim > 0 else 0
        if 2**n_physical != dim or n_physical % 2 or n_physical == 0:
            raise DimensionError(details=f"dimension {dim} is not 4^n for a paired ion string")
        return cls.linear(n_physical // 2)

    @property
    def n_logical(self) -> int:
        return len(self.pairs)

    @property
    def physical_dim(self) -> int:
        return 2 ** int(self.n_physical)

    @property
    def logical_dim(self) -> int:
        return 2**self.n_logical

    def check_logical_index(self, index: int) -> None:
        if not 0 <= index < self.n_logical:
            raise LayoutError(details=f"logical qubit {index} outside register of {self.n_logical}")

    def physical_bits(self, logical_bits: str) -> str:
        if len(logical_bits) != self.n_logical or set(logical_bits) - {"0", "1"}:
            raise DimensionError(details=f"expected {self.n_logical} logical bits, got {logical_bits!r}")
        bits = ["1"] * int(self.n_physical)
        for (first, second), bit in zip(self.pairs, logical_bits):
            bits[first], bits[second] = ("1", "0") if bit == "0" else ("0", "1")
        return "".join(bits)

    def isometry(self) -> np.ndarray:
        """Columns are the encoded logical basis states, logical qubit 0 most significant"""
        iso = np.zeros((self.physical_dim, self.logical_dim), dtype=np.complex128)
        for column in range(self.logical_dim):
            bits = format(column, f"0{self.n_logical}b")
            iso[int(self.physical_bits(bits), 2), column] = 1.0
        return iso

    def center_ions(self, first: int, second: int) -> tuple[int, int]:
        """
        Physically adjacent ions of two neighbouring logical qubits, used by the phase gate.

        Raises:
            LayoutError: if the logical qubits are not neighbours or their facing ions are not adjacent
        """
        self.check_logical_index(first)
        self.check_logical_index(second)
        low, high = sorted((first, second))
        if high - low != 1:
            raise LayoutError(details=f"logical qubits {first} and {second} are not adjacent")
        left, right = self.pairs[low][1], self.pairs[high][0]
        if abs(right - left) != 1:
            raise LayoutError(details=f"ions {left} and {right} are not neighbours in the string")
        return left, right
