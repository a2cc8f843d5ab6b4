from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict
from pydantic import Field, field_validator
from dataclasses import dataclass
from typing import List, Tuple, Type


@dataclass
class AppConfig:
    """Static application metadata"""

    @property
    def APP_NAME(self):
        return "qboole"

    @property
    def APP_VERSION(self):
        return "0.1.0"

    @property
    def DESCRIPTION(self):
        return "Exact q-Boole, q-Euler and q-Changhee polynomial tables and identity checks"


class Settings(BaseSettings):
    # Table and suite bounds
    N_MAX_LIMIT: int = Field(
        64, description="Largest n_max accepted on the command line"
    )
    DEFAULT_N_MAX: int = Field(12, description="Default index range for verify")
    DEFAULT_ORDER_MAX: int = Field(3, description="Default largest order k for verify")
    REFLECTION_N_MAX: int = Field(
        10, description="Largest n for the negation-reflection identities"
    )
    DEFAULT_LAMBDAS: List[str] = Field(
        "1,2,3,-1,-2,1/2",
        description="Comma separated λ values exercised by verify",
    )

    # Sampled-x mode
    SAMPLED_X_COUNT: int = Field(3, description="Rational x samples per check")
    SAMPLED_X_HEIGHT: int = Field(
        9, description="Bound on numerator and denominator of sampled x"
    )

    # Output and diagnostics
    DEFAULT_FORMAT: str = Field("json", description="Output format: json, csv, pretty")
    LOG_LEVEL: str = Field("WARNING", description="Level of the stderr diagnostics")

    @field_validator("DEFAULT_LAMBDAS", mode="before")
    def split_lambdas(cls, v) -> List[str]:
        if isinstance(v, str):
            return [item.strip() for item in v.split(",") if item.strip()]
        return v

    model_config = SettingsConfigDict(case_sensitive=True, validate_default=True)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # The CLI is configured by its flags only, never by the environment
        return (init_settings,)


app_config = AppConfig()
settings = Settings()
