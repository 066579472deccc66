"""Application configuration settings."""
import os
from functools import lru_cache


class Settings:
    """Runtime settings loaded from environment variables."""

    # Application
    APP_NAME: str = "idma-power-game"
    APP_VERSION: str = "0.1.0"

    # Logging
    LOG_LEVEL: str = os.getenv("IDMA_LOG_LEVEL", "INFO").upper()
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Output
    OUTPUT_DIR: str = os.getenv("IDMA_OUTPUT_DIR", "results")

    # Monte Carlo
    DEFAULT_SEED: int = int(os.getenv("IDMA_SEED", "20080101"))
    WORKERS: int = int(os.getenv("IDMA_WORKERS", "1"))

    @property
    def artifact_version(self) -> str:
        """Name and version stamped into every result file header."""
        return f"{self.APP_NAME} {self.APP_VERSION}"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Global settings instance
settings = get_settings()
