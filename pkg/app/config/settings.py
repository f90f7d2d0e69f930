from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    # App
    APP_NAME: str = "Lindblad Purifiability Toolkit"
    ENVIRONMENT: str = "development"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Envelope computation
    DEFAULT_GRID_SIZE: int = 10_000   # radii i/N, i = 1..N
    ENVELOPE_WORKERS: int = 1         # 1 = sequential evaluation
    ANALYTIC_CROSSCHECK_FRACTION: float = 0.01

    # Brute-force oracle
    ORACLE_SAMPLE_COUNT: int = 1_000_000
    ORACLE_SEED: int = 0              # row sampling for --oracle-check

    # Integration
    DEFAULT_DT: float = 1e-4
    RADIUS_FLOOR: float = 1e-6        # control synthesis refuses radii below this
    STEER_MAX_DURATION: float = 100.0

    # Output
    JSON_INDENT: int = 2

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="ignore"  # Ignore extra env vars not defined in the model
    )

settings = Settings()
