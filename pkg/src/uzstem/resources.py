"""Locate and load the lexicon, topologies and path configuration.

Lookup order for each file: explicit argument, then the directory named by
``$UZSTEM_DATA``, then the copy shipped inside the package.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .exceptions import ConfigError
from .fsm import LtrFsm, load_topologies
from .lexicon import Lexicon, load_lexicon
from .stemmer import DEFAULT_MIN_STEM_LEN, MainFsm, PathConfig, compile_main_fsm, parse_path_config

DATA_ENV = "UZSTEM_DATA"
LEXICON_FILE = "Suffixes.xml"
TOPOLOGY_DIR = "topology"
PATHS_FILE = "paths.cfg"


def embedded_data_dir() -> Path:
    return Path(str(resources.files("uzstem") / "data"))


def _data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else embedded_data_dir()


def resolve(lexicon=None, topology_dir=None, paths=None) -> tuple[Path, Path, Path]:
    base = _data_dir()
    return (
        Path(lexicon) if lexicon else base / LEXICON_FILE,
        Path(topology_dir) if topology_dir else base / TOPOLOGY_DIR,
        Path(paths) if paths else base / PATHS_FILE,
    )


@dataclass(frozen=True)
class Resources:
    lexicon: Lexicon
    topologies: dict[int, LtrFsm]
    config: PathConfig
    main: MainFsm


def load_path_config(path: str | Path, lexicon: Lexicon) -> PathConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read path config: {exc}") from exc
    return parse_path_config(text, lexicon, source=str(path))


def load_resources(
    lexicon=None, topology_dir=None, paths=None, min_stem_len: int = DEFAULT_MIN_STEM_LEN
) -> Resources:
    lexicon_path, topology_path, paths_path = resolve(lexicon, topology_dir, paths)
    lex = load_lexicon(lexicon_path)
    topologies = load_topologies(topology_path)
    config = load_path_config(paths_path, lex)
    main = compile_main_fsm(lex, topologies, config, min_stem_len=min_stem_len)
    return Resources(lexicon=lex, topologies=topologies, config=config, main=main)
