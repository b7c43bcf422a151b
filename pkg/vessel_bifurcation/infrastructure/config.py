"""Process settings and run configuration files."""

import json
from pathlib import Path
from typing import Optional, Tuple

import structlog
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from vessel_bifurcation.domain.entities.hyperparams import HyperParams, Profile
from vessel_bifurcation.domain.entities.pose import Calibration
from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.exceptions import InvalidDataError

logger = structlog.get_logger()

CONFIG_FILENAME = "config.json"


class Settings(BaseSettings):
    """Process-wide settings read from ``VESSEL_BIFURCATION_*`` environment variables or ``.env``."""

    model_config = SettingsConfigDict(env_prefix="VESSEL_BIFURCATION_", env_file=".env", extra="ignore")

    log_level: str = Field(default="INFO", description="Log level")
    log_json: bool = Field(default=False, description="Render logs as JSON lines")
    max_workers: int = Field(default=1, ge=1, description="Threads for per-frame mask processing")
    profile: Profile = Field(default=Profile.PHANTOM, description="Default hyperparameter profile")
    gating_radius_mm: float = Field(default=30.0, gt=0, description="Truth-to-prediction matching radius (mm)")
    needle_band_mm: Tuple[float, float] = Field(default=(20.0, 50.0), description="Acceptable needle distance band (mm)")


class RunConfig(BaseModel):
    """
    Run configuration file (``config.json``).

    Hyperparameters written under ``hyperparams`` override the profile column; the profile is
    the file's ``profile`` or, failing that, the caller's default. Missing sections take their
    defaults.
    """

    profile: Optional[Profile] = Field(None, description="Base hyperparameter profile")
    hyperparams: HyperParams = Field(default_factory=HyperParams, description="Explicit hyperparameter overrides")
    calibration: Calibration = Field(default_factory=Calibration, description="Image-to-transducer calibration")
    scan: ScanParams = Field(default_factory=ScanParams, description="Acquisition parameters")

    def resolve_hyperparams(self, default_profile: "Profile | str" = Profile.PHANTOM) -> HyperParams:
        """
        Effective hyperparameters.

        Args:
            default_profile: Profile used when the file names none

        Returns:
            Profile column with the explicitly written fields applied on top
        """
        explicit = {name: getattr(self.hyperparams, name) for name in self.hyperparams.model_fields_set}
        return HyperParams.for_profile(self.profile or default_profile, **explicit)

    def with_profile(self, profile: "Profile | str") -> "RunConfig":
        """Copy selecting ``profile``; explicit hyperparameters still apply on top of it."""
        selected = Profile(profile)
        overrides = sorted(self.hyperparams.model_fields_set)
        if overrides:
            logger.info("Profile selected over explicit hyperparameters", profile=selected.value, kept=overrides)
        return self.model_copy(update={"profile": selected})


def load_run_config(path: "Path | str") -> RunConfig:
    """
    Read a run configuration file.

    Args:
        path: JSON file, or a dataset directory holding ``config.json``

    Returns:
        RunConfig

    Raises:
        InvalidDataError: If the file is not valid JSON
        pydantic.ValidationError: If values are out of range
    """
    file = Path(path)
    if file.is_dir():
        file = file / CONFIG_FILENAME
    try:
        data = json.loads(file.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InvalidDataError(f"invalid config file {file}: {e}") from e
    if not isinstance(data, dict):
        raise InvalidDataError(f"config file {file} must hold a JSON object", data={"value": data})
    return RunConfig.model_validate(data)


def save_run_config(config: RunConfig, path: "Path | str") -> Path:
    """Write only the explicitly set values of a run configuration and return the file path."""
    file = Path(path)
    if file.is_dir():
        file = file / CONFIG_FILENAME
    file.write_text(config.model_dump_json(indent=2, exclude_unset=True), encoding="utf-8")
    return file
