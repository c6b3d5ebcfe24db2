import sys

# noinspection PyUnreachableCode
if sys.version_info < (3, 11):
    from strenum import StrEnum
else:
    from enum import StrEnum

import logging
from typing import NoReturn

from pydantic import BaseModel

from dfsqc.toolkit.errors.exception import DfsqcException

logger = logging.getLogger(__name__)


class DfsqcError(BaseModel):
    code: int
    message: str
    details: str | None = None

    def throw(self) -> NoReturn:
        raise DfsqcException.from_error(code=self.code, message=self.message, details=self.details)

    @classmethod
    def from_exception(cls, exc: DfsqcException) -> "DfsqcError":
        return cls(code=exc.code, message=exc.message, details=exc.details)


class Status(StrEnum):
    COMPLETED = "COMPLETED"
    FAILED = "FAILED"


class ExperimentKind(StrEnum):
    BELL = "bell"
    CNOT_TOMOGRAPHY = "cnot-tomo"
    COHERENCE = "coherence"
    MS_SCAN = "ms-scan"
    CP_SCAN = "cp-scan"
