import typing

import orjson


def default(obj):
    """
    orjson fallback for the domain types, all of which know their own json form
    """
    to_json = getattr(obj, "to_json", None)
    if to_json is not None:
        return to_json()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"type {type(obj).__name__} is not json serializable")


def dumps_canonical(data, indent: bool = True) -> bytes:
    """
    byte-deterministic json: sorted keys, fixed indentation, trailing newline

    Example:
        >>> dumps_canonical({"b": 1, "a": [1, 2]}, indent=False)
        b'{"a":[1,2],"b":1}\\n'
    """
    option = orjson.OPT_SORT_KEYS | orjson.OPT_APPEND_NEWLINE
    if indent:
        option |= orjson.OPT_INDENT_2
    return orjson.dumps(data, default=default, option=option)


def read_json(file: str):
    """
    simple json reader
    """
    with open(file, "rb") as f:
        return orjson.loads(f.read())


def write_json(file: str, data, indent: bool = True) -> bytes:
    """
    canonical json writer, returns the bytes written
    """
    raw = dumps_canonical(data, indent)
    with open(file, "wb") as f:
        f.write(raw)
    return raw


def loads(raw: typing.Union[bytes, str]):
    return orjson.loads(raw)
