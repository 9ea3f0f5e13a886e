"""Process-wide settings via Pydantic Settings.

Each field maps an explicit LWPT_* variable (or .env entry). None is required;
run parameters belong in the --config file or on the command line, not here.
"""

from pydantic import Field
from pydantic_settings import BaseSettings

from app.domain.value_objects.enums import SignalFormat


class Settings(BaseSettings):
    log_level: str = Field(default="INFO", validation_alias="LWPT_LOG_LEVEL")

    # Default format for written signal files (csv | bin)
    signal_format: SignalFormat = Field(
        default=SignalFormat.CSV, validation_alias="LWPT_SIGNAL_FORMAT"
    )

    # Threads for the fit_lambda grid search
    workers: int = Field(default=1, ge=1, validation_alias="LWPT_WORKERS")

    checkpoint_every: int = Field(default=50, ge=1, validation_alias="LWPT_CHECKPOINT_EVERY")

    model_config = {"env_file": ".env", "env_file_encoding": "utf-8", "extra": "ignore"}


settings = Settings()
