"""Service configuration: where documents live, which generator to use, and
where the tunable data files are."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from . import defaults
from .errors import PlumeError
from .generation import GenerationConfig, LiveGenerator, MockGenerator, TextGeneratorPort

API_KEY_ENV = "PLUME_API_KEY"


@dataclass
class ServiceConfig:
    listen_host: str = "127.0.0.1"
    listen_port: int = 8040
    store_path: str = "documents"
    generator_mode: str = "mock"  # mock | live
    model_name: str = "gpt-4o"
    temperature: float = 0.2
    concurrency_limit: int = 4
    svg_byte_budget: int = 20000
    api_endpoint: str = "https://api.openai.com/v1/chat/completions"
    mock_responses_dir: str | None = None
    transcript_path: str | None = None
    # Data file overrides; None means the packaged copies.
    rules_path: str | None = None
    guidelines_path: str | None = None
    stopwords_path: str | None = None
    few_shot_path: str | None = None
    role_context_path: str | None = None


def load_config(path: str | Path | None = None) -> ServiceConfig:
    """Read a JSON config file; missing file or keys fall back to defaults."""
    config = ServiceConfig()
    if path is None:
        return config
    try:
        raw = json.loads(Path(path).read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PlumeError("malformed-config", f"cannot read config {path}: {exc}") from None
    known = {f.name for f in fields(ServiceConfig)}
    for key, value in raw.items():
        if key not in known:
            raise PlumeError("malformed-config", f"unknown config key {key!r}")
        setattr(config, key, value)
    if config.generator_mode not in ("mock", "live"):
        raise PlumeError("malformed-config", f"unknown generator_mode {config.generator_mode!r}")
    return config


def apply_data_paths(config: ServiceConfig) -> None:
    defaults.configure(
        rules=config.rules_path,
        guidelines=config.guidelines_path,
        stopwords=config.stopwords_path,
        few_shot=config.few_shot_path,
        role_context=config.role_context_path,
    )


def generation_config(config: ServiceConfig) -> GenerationConfig:
    return GenerationConfig(
        model_name=config.model_name,
        temperature=config.temperature,
        max_concurrency=config.concurrency_limit,
        svg_byte_budget=config.svg_byte_budget,
    )


def make_generator(config: ServiceConfig, env: dict | None = None) -> TextGeneratorPort:
    """Build the configured port. Mock mode needs no key; live mode fails
    fast without one."""
    environ = os.environ if env is None else env
    if config.generator_mode == "mock":
        return MockGenerator(config.mock_responses_dir)
    api_key = environ.get(API_KEY_ENV, "")
    if not api_key:
        raise PlumeError(
            "missing-api-key",
            f"live generation requires the {API_KEY_ENV} environment variable",
        )
    return LiveGenerator(
        api_key=api_key,
        endpoint=config.api_endpoint,
        transcript_path=config.transcript_path,
    )
