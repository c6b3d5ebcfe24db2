import hashlib
import json
from typing import Any

from pydantic import BaseModel


def config_hash(config: BaseModel | dict[str, Any]) -> str:
    """sha256 over the canonical (sorted, compact) JSON form of a configuration"""
    payload = config.model_dump(mode="json", by_alias=True) if isinstance(config, BaseModel) else config
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
