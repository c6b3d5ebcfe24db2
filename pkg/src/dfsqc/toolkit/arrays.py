from typing import Annotated, Any, TypeAlias

import numpy as np
from pydantic_core import core_schema

# JSON leaves are [re, im] pairs, row-major
ComplexPairs: TypeAlias = list


class _ComplexArrayField:
    """Pydantic hook that stores complex numpy arrays and serializes them as nested [re, im] pairs"""

    # noinspection PyUnusedLocal
    @classmethod
    def __get_pydantic_core_schema__(cls, source, handler):
        return core_schema.no_info_plain_validator_function(
            cls.validate,
            serialization=core_schema.plain_serializer_function_ser_schema(
                cls.to_pairs,
                when_used="json",
            ),
        )

    # noinspection PyUnusedLocal
    @classmethod
    def __get_pydantic_json_schema__(cls, schema, handler) -> dict[str, Any]:
        return {"type": "array", "description": "row-major nested list of [re, im] pairs"}

    @staticmethod
    def validate(value: Any) -> np.ndarray:
        if isinstance(value, np.ndarray):
            return np.asarray(value, dtype=np.complex128)
        pairs = np.asarray(value, dtype=float)
        if pairs.ndim == 0 or pairs.shape[-1] != 2:
            raise ValueError(f"expected nested [re, im] pairs, got shape {pairs.shape}")
        return pairs[..., 0] + 1j * pairs[..., 1]

    @staticmethod
    def to_pairs(value: np.ndarray) -> ComplexPairs:
        value = np.asarray(value, dtype=np.complex128)
        return np.stack([value.real, value.imag], axis=-1).tolist()


ComplexArray = Annotated[np.ndarray, _ComplexArrayField]
