"""
flat-file readers and writers for configuration files
"""

import os
import tomllib
import typing

import toml
import yaml

from ktflag.errors import ConfigError
from ktflag.ext_json import read_json, write_json


def load_toml(path: str):
    with open(path, "rb") as f:
        return tomllib.load(f)


def save_toml(path: str, data: dict):
    with open(path, "w") as f:
        toml.dump(data, f)


def load_yaml(path: str):
    with open(path, "r") as f:
        return yaml.load(f, Loader=yaml.SafeLoader)


def save_yaml(path: str, data: dict):
    with open(path, "w") as f:
        yaml.safe_dump(data, f, sort_keys=True)


_READERS: typing.Dict[str, typing.Callable[[str], typing.Any]] = {
    "json": read_json,
    "toml": load_toml,
    "yaml": load_yaml,
    "yml": load_yaml,
}

_WRITERS: typing.Dict[str, typing.Callable[[str, dict], typing.Any]] = {
    "json": write_json,
    "toml": save_toml,
    "yaml": save_yaml,
    "yml": save_yaml,
}


def _extension_read(path: str):
    if "." not in os.path.basename(path):
        raise ConfigError(f"{path}: unsupported file type")
    reader = _READERS.get(path.rsplit(".", 1)[-1].lower())
    if reader is None:
        raise ConfigError(f"{path}: unsupported file type")
    return reader(path)


def _signature_load(path: str):
    with open(path, "rb") as f:
        fsignature = f.read(80)

    # json objects start with a curly brace
    if fsignature.strip().startswith(b"{"):
        return read_json(path)

    # toml: a key = value pair before any table header
    elif b"=" in fsignature and b"[" not in fsignature[: fsignature.find(b"=")].strip():
        return load_toml(path)

    elif fsignature.strip().startswith(b"---") or b": " in fsignature:
        return load_yaml(path)

    raise ConfigError(f"{path}: unsupported file type or unknown signature")


def read_file(path: str, known_ext: str = None):
    """
    Reads a json, toml or yaml file. With `known_ext` the format is forced, otherwise
    it is taken from the extension and, failing that, guessed from the first bytes.

    Args:
        path (str): The path to the file.
        known_ext (str, optional): The known extension of the file. Defaults to None.

    Returns:
        The contents of the file.

    Raises:
        ConfigError: the file is missing, malformed or of an unsupported type
    """
    if not os.path.exists(path):
        raise ConfigError(f"{path}: no such file")
    try:
        if known_ext:
            reader = _READERS.get(known_ext)
            if reader is None:
                raise ConfigError(f"unsupported file type {known_ext!r}")
            return reader(path)

        try:
            return _extension_read(path)
        except ConfigError:
            return _signature_load(path)
    except ConfigError:
        raise
    except (ValueError, yaml.YAMLError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"{path}: {e}") from e


def write_file(path: str, data: dict):
    """writes data in the format named by the extension of path"""
    writer = _WRITERS.get(path.rsplit(".", 1)[-1].lower())
    if writer is None:
        raise ConfigError(f"{path}: unsupported file type")
    writer(path, data)
