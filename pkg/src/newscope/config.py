"""Engine configuration with INI-file loading.

Sections/keys: [dedup] levenshtein_sim, jaccard; [subjects] max;
[service] page_size, host, port.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class EngineConfig:
    dedup_levenshtein_sim: float = 0.80
    dedup_jaccard: float = 0.50
    subjects_max: int = 50
    page_size: int = 10
    host: str = "127.0.0.1"
    port: int = 8000

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConfig":
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise FileNotFoundError(f"config file not found: {path}")
        kwargs = {}
        if parser.has_option("dedup", "levenshtein_sim"):
            kwargs["dedup_levenshtein_sim"] = parser.getfloat("dedup", "levenshtein_sim")
        if parser.has_option("dedup", "jaccard"):
            kwargs["dedup_jaccard"] = parser.getfloat("dedup", "jaccard")
        if parser.has_option("subjects", "max"):
            kwargs["subjects_max"] = parser.getint("subjects", "max")
        if parser.has_option("service", "page_size"):
            kwargs["page_size"] = parser.getint("service", "page_size")
        if parser.has_option("service", "host"):
            kwargs["host"] = parser.get("service", "host")
        if parser.has_option("service", "port"):
            kwargs["port"] = parser.getint("service", "port")
        return cls(**kwargs)
