import hashlib
import os
import typing


def digest_bytes(data: bytes, algorithm: str = "sha256") -> str:
    """
    hex digest with CRLF folded to LF, so a table checked out on another platform
    keeps its digest
    """
    return hashlib.new(algorithm, data.replace(b"\r\n", b"\n")).hexdigest()


def digest_file(path: str, algorithm: str = "sha256") -> str:
    with open(path, "rb") as f:
        return digest_bytes(f.read(), algorithm)


def write_digest(path: str, data: typing.Optional[bytes] = None, algorithm: str = "sha256") -> str:
    """
    writes "<digest>  <basename>" to path.<algorithm>

    Args:
        path (str): the file the digest belongs to
        data (bytes, optional): its contents when already in memory, otherwise path is read

    Returns:
        str: the digest
    """
    digest = digest_file(path, algorithm) if data is None else digest_bytes(data, algorithm)
    with open(f"{path}.{algorithm}", "w", newline="\n") as f:
        f.write(f"{digest}  {os.path.basename(path)}\n")
    return digest


def read_digest(path: str, algorithm: str = "sha256") -> str:
    with open(f"{path}.{algorithm}") as f:
        return f.read().split()[0]
