"""Bundled towers and the preset parser.

Preset strings:
    sym                      symmetric group algebras
    hecke:d,w1,...,wd        degenerate cyclotomic Hecke algebra, weights listed with multiplicity
    wreath:<file or name>    wreath product over a Frobenius algebra in JSON form
    sergeev                  wreath product over the Clifford algebra Cl_1
"""
from __future__ import annotations

from pathlib import Path

from ..errors import ConfigError
from ..exactlin.scalars import QQ
from .frobenius import (FrobeniusSystem, casimir, casimir_iota, frobenius_compose, frobenius_step,
                        frobenius_system, identity_system, relative_norm)
from .hecke import HeckeTower
from .symmetric import SymmetricTower
from .wreath import DATA_DIR, FrobeniusAlgebraData, WreathTower, load_preset

__all__ = [
    "FrobeniusSystem", "FrobeniusAlgebraData", "HeckeTower", "SymmetricTower", "WreathTower",
    "casimir", "casimir_iota", "frobenius_compose", "frobenius_step", "frobenius_system",
    "identity_system", "relative_norm", "load_preset", "make_tower", "jucys_murphy",
]


def make_tower(spec, max_level=4, field=QQ):
    """Build a tower from a preset string."""
    spec = spec.strip()
    if spec == "sym":
        return SymmetricTower(max_level, field)
    if spec == "sergeev":
        return WreathTower(load_preset("cl1"), max_level, field, label="sergeev")
    if spec.startswith("hecke:"):
        try:
            nums = [int(x) for x in spec[len("hecke:"):].split(",") if x.strip()]
        except ValueError:
            raise ConfigError(f"bad Hecke preset {spec!r}") from None
        if not nums:
            raise ConfigError("hecke preset needs a level d")
        d, weights = nums[0], nums[1:]
        if d < 1 or len(weights) != d:
            raise ConfigError(f"hecke:{d} needs exactly {d} weights, got {len(weights)}")
        return HeckeTower(weights, max_level, field)
    if spec.startswith("wreath:"):
        arg = spec[len("wreath:"):]
        path = Path(arg)
        if not path.exists() and (DATA_DIR / f"{arg}.json").exists():
            path = DATA_DIR / f"{arg}.json"
        if not path.exists():
            raise ConfigError(f"no Frobenius algebra file {arg!r}")
        return WreathTower(FrobeniusAlgebraData.from_json(path), max_level, field, label=spec)
    raise ConfigError(f"unknown tower preset {spec!r}")


def jucys_murphy(tower, n):
    return tower.jucys_murphy(n)
