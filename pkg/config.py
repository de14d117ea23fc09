"""
Configuration management using Pydantic BaseSettings.
Values are read from the environment (prefix YBL_) or a local .env file.
"""
from typing import List
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    # Application settings
    ENVIRONMENT: str = "development"
    LOG_LEVEL: str = "WARNING"

    # Memory budget: maximum number of basis states (legDim ** legCount) of any
    # operator assembled for a chain or RTT check
    BASIS_BUDGET: int = 4096

    # Two-parameter identities are checked on {0..GRID_BOUND}^2
    GRID_BOUND: int = 3

    # Quantum algebra level truncation
    MAX_LEVEL: int = 2

    # Brute-force search caps
    ISO_MAX_SIZE: int = 8

    # verify-all runs chain-level checks only while legDim ** sites stays within this
    CHECK_MAX_DIM: int = 81

    # Mutation-robustness harness
    MUTATION_SAMPLES: int = 20
    MUTATION_SEED: int = 2024

    # Extra solution JSON files appended to the default corpus
    CORPUS_FILES: List[str] = []

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="YBL_",
        case_sensitive=True,
        extra="ignore",  # Allow extra environment variables
    )

# Create settings instance
settings = Settings()
