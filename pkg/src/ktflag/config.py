"""
run configuration for the verification suites and table emission

Harness values resolve as: explicit argument > config file > environment > default.
"""

from dataclasses import asdict, dataclass, fields
import logging
import os
import typing

import psutil

from ktflag.errors import ConfigError
from ktflag.file import read_file, write_file
from ktflag.positivity import DEFAULT_CAP

logger = logging.getLogger(__name__)

ENV_JOBS = "KTFLAG_JOBS"
ENV_CAP = "KTFLAG_CAP"
ENV_FAIL_ON_UNKNOWN = "KTFLAG_FAIL_ON_UNKNOWN"

TRUE_WORDS = ("1", "true", "yes", "on")
FALSE_WORDS = ("0", "false", "no", "off")


def default_jobs() -> int:
    return psutil.cpu_count(logical=False) or 1


def _int(value, name: str) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if out < 1:
        raise ConfigError(f"{name} must be positive, got {out}")
    return out


def _bool(value, name: str) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, int) and value in (0, 1):
        return bool(value)
    if isinstance(value, str):
        word = value.strip().lower()
        if word in TRUE_WORDS:
            return True
        if word in FALSE_WORDS:
            return False
    raise ConfigError(f"{name} must be a boolean, got {value!r}")


@dataclass(frozen=True)
class HarnessConfig:
    jobs: int = 1
    cap: int = DEFAULT_CAP
    fail_on_unknown: bool = True

    @classmethod
    def load(
        cls,
        path: typing.Optional[str] = None,
        jobs: typing.Optional[int] = None,
        cap: typing.Optional[int] = None,
        fail_on_unknown: typing.Optional[bool] = None,
        environ: typing.Optional[typing.Mapping[str, str]] = None,
    ) -> "HarnessConfig":
        """
        Args:
            path: optional json/toml/yaml file; a ``harness`` table is used when present
            jobs, cap, fail_on_unknown: explicit overrides (command line flags)
            environ: defaults to os.environ

        Raises:
            ConfigError: unreadable file or invalid values
        """
        environ = os.environ if environ is None else environ
        data: dict = {}
        if path:
            raw = read_file(path) or {}
            if not isinstance(raw, dict):
                raise ConfigError(f"{path}: expected a mapping")
            data = raw.get("harness", raw)
            unknown = set(data) - {f.name for f in fields(cls)}
            if unknown:
                raise ConfigError(f"{path}: unknown harness keys {sorted(unknown)}")

        def pick(explicit, key, env, fallback):
            if explicit is not None:
                return explicit
            if key in data:
                return data[key]
            if env and env in environ:
                return environ[env]
            return fallback()

        resolved = cls(
            jobs=_int(pick(jobs, "jobs", ENV_JOBS, default_jobs), "jobs"),
            cap=_int(pick(cap, "cap", ENV_CAP, lambda: DEFAULT_CAP), "cap"),
            fail_on_unknown=_bool(
                pick(fail_on_unknown, "fail_on_unknown", ENV_FAIL_ON_UNKNOWN, lambda: True), "fail_on_unknown"
            ),
        )
        logger.debug("harness config %s", resolved)
        return resolved

    def to_json(self) -> dict:
        return asdict(self)

    def save(self, path: str):
        write_file(path, {"harness": self.to_json()})


FAMILIES = ("p", "b", "c", "d")
PN_FAMILIES = ("p", "b", "r", "q")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class TableConfig:
    """
    a structure-constant table: either a flag variety (type + parabolic) or, when
    ``n`` is set, P^n through the closed formulas or recurrences
    """

    out: str
    family: str = "p"
    type: str = "A2"
    parabolic: typing.Tuple[int, ...] = ()
    format: str = "csv"
    n: typing.Optional[int] = None
    form: str = "closed"

    def __post_init__(self):
        families = PN_FAMILIES if self.n is not None else FAMILIES
        if self.family not in families:
            raise ConfigError(f"family must be one of {families}, got {self.family!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.form not in ("closed", "recur"):
            raise ConfigError(f"form must be closed or recur, got {self.form!r}")
        if self.n is not None and self.n < 1:
            raise ConfigError(f"n must be positive, got {self.n}")

    @classmethod
    def from_mapping(cls, data: typing.Mapping[str, typing.Any]) -> "TableConfig":
        data = dict(data)
        unknown = set(data) - {f.name for f in fields(cls)}
        if unknown:
            raise ConfigError(f"unknown table keys {sorted(unknown)}")
        if "out" not in data:
            raise ConfigError("table config needs an 'out' path")
        parabolic = data.get("parabolic") or ()
        if isinstance(parabolic, str):
            parabolic = [int(x) for x in parabolic.split(",") if x.strip()]
        data["parabolic"] = tuple(sorted(int(x) for x in parabolic))
        return cls(**data)

    @classmethod
    def load(cls, path: str) -> typing.List["TableConfig"]:
        """
        reads one table (a mapping) or several (a ``tables`` list) from a file
        """
        raw = read_file(path) or {}
        if isinstance(raw, dict) and "tables" in raw:
            items = raw["tables"]
        else:
            items = [raw]
        if not isinstance(items, list) or not all(isinstance(x, dict) for x in items):
            raise ConfigError(f"{path}: expected a table mapping or a 'tables' list")
        return [cls.from_mapping(x) for x in items]
