"""qrank Settings."""

from pathlib import Path

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Defaults for the CLI, overridable through ``QRANK_*`` variables."""

    model_config = SettingsConfigDict(
        env_prefix="QRANK_",
        env_file=".env-qrank",
    )
    debug: bool = False
    quiet: bool = False
    log_file: Path | None = None  # no file sink by default
    jobs: int = Field(default=1, ge=1)
    window: int = Field(default=3, ge=1)  # S
    completion: int | None = Field(default=None, ge=1)  # W, None = adaptive
    roundtrip: bool = False
    covary: int = Field(default=1, ge=0)
    chunk_size: int = Field(default=2000, ge=1)

    @model_validator(mode="after")
    def check_completion(self) -> "Settings":
        """Keep an explicit completion window at least as wide as S."""
        if self.completion is not None and self.completion < self.window:
            msg = (
                f"completion window {self.completion} is narrower than "
                f"S={self.window}"
            )
            raise ValueError(msg)
        return self
