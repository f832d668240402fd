"""Run configuration: a ``key = value`` file overridden by command-line flags."""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from ..symbolic.theta import ThetaMatrix, theta_2d

__all__ = ["SUITES", "Config", "ConfigError", "load_config", "parse_theta"]

SUITES = ("star-core", "hopf", "fock", "numeric", "landau", "twoparticle")


class ConfigError(ValueError):
    pass


def parse_theta(text: str) -> ThetaMatrix:
    """``"1/3"`` means ``theta^{12} = 1/3`` in two dimensions; ``"0,1;-1,0"`` is a full matrix."""
    text = str(text).strip()
    try:
        if ";" in text:
            rows = [[Fraction(c) for c in row.replace(",", " ").split()] for row in text.split(";")]
            return ThetaMatrix(rows)
        return theta_2d(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad theta {text!r}: {exc}") from None


@dataclass(frozen=True)
class Config:
    theta: Fraction = Fraction(1, 3)
    b: Fraction = Fraction(1, 2)
    modes_file: str | None = None
    grid_n: int = 64
    grid_l: float = 8.0
    suites: tuple = ("all",)
    output_dir: str | None = None
    seed: int = 0
    jobs: int = 1
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        bad = [s for s in self.suites if s not in SUITES + ("all",)]
        if bad:
            raise ConfigError(f"unknown suite(s): {', '.join(bad)}; choose from {', '.join(SUITES + ('all',))}")
        for name, tol in self.tolerances.items():
            if name not in SUITES:
                raise ConfigError(f"tolerance override for unknown suite {name!r}")
            if not tol > 0:
                raise ConfigError(f"tolerance for {name} must be positive")
        if self.grid_n < 2 or self.grid_n & (self.grid_n - 1):
            raise ConfigError("grid N must be a power of two")
        if not self.grid_l > 0:
            raise ConfigError("grid L must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")

    @property
    def suite_list(self) -> list:
        if "all" in self.suites:
            return list(SUITES)
        return list(dict.fromkeys(self.suites))

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self) -> dict:
        return {
            "theta": str(self.theta),
            "b": str(self.b),
            "modes_file": self.modes_file,
            "grid_n": self.grid_n,
            "grid_l": self.grid_l,
            "suites": list(self.suites),
            "output_dir": self.output_dir,
            "seed": self.seed,
            "jobs": self.jobs,
            "tolerances": dict(self.tolerances),
        }


def _split_suites(text: str) -> tuple:
    return tuple(s.strip() for s in text.replace(",", " ").split() if s.strip())


def load_config(path) -> Config:
    """Read ``key = value`` lines; ``tolerance.<suite> = value`` overrides a suite tolerance."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from None
    kw: dict = {}
    tols: dict = {}
    conv = {
        "theta": Fraction,
        "b": Fraction,
        "modes_file": str,
        "modes": str,
        "grid_n": int,
        "grid_l": float,
        "suites": _split_suites,
        "suite": _split_suites,
        "output_dir": str,
        "out": str,
        "seed": int,
        "jobs": int,
    }
    alias = {"modes": "modes_file", "suite": "suites", "out": "output_dir"}
    for key, value in parser["config"].items():
        key = key.replace("-", "_")
        if key.startswith("tolerance."):
            try:
                tols[key.split(".", 1)[1].replace("_", "-")] = float(value)
            except ValueError:
                raise ConfigError(f"bad tolerance {value!r}") from None
            continue
        if key not in conv:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            kw[alias.get(key, key)] = conv[key](value)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"bad value for {key}: {value!r}") from None
    if "modes_file" in kw and not Path(kw["modes_file"]).is_absolute():
        kw["modes_file"] = str(Path(path).parent / kw["modes_file"])
    return Config(tolerances=tols, **kw)
