from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class DfsqcSettings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="DFSQC_")

    threads: int = Field(default=1, ge=1)
    log_level: str = "WARNING"
    max_dimension: int = Field(default=4096, ge=4)
