import logging

from ktflag.ext_hashlib import digest_bytes, digest_file, read_digest, write_digest
from ktflag.ext_json import dumps_canonical, loads, read_json, write_json
from ktflag.gkm import space_of, structure_constants
from ktflag.lattice import LaurentPoly


def test_canonical_json():
    assert dumps_canonical({"b": 1, "a": [1, 2]}, indent=False) == b'{"a":[1,2],"b":1}\n'
    assert dumps_canonical({"b": 1, "a": 2}) == dumps_canonical({"a": 2, "b": 1})
    assert loads(dumps_canonical({"s": {3, 1, 2}})) == {"s": [1, 2, 3]}


def test_domain_objects_serialize(tmp_path):
    f = LaurentPoly({(1, 0): 2, (0, -1): -3}, 2)
    path = str(tmp_path / "f.json")
    raw = write_json(path, {"f": f})
    assert read_json(path) == {"f": [{"w": [0, -1], "c": -3}, {"w": [1, 0], "c": 2}]}
    assert raw.endswith(b"\n")

    space = space_of("A1")
    s = space.rs.s(1)
    coeffs = structure_constants(space, s, s, "p")
    assert loads(dumps_canonical(coeffs)) == [{"w": [1], "coef": [{"w": [-2], "c": -1}, {"w": [0], "c": 1}]}]


def test_digests(tmp_path):
    path = tmp_path / "table.csv"
    path.write_bytes(b"a,b\r\n1,2\r\n")
    assert digest_file(str(path)) == digest_bytes(b"a,b\n1,2\n")
    assert digest_bytes(b"a,b\n") != digest_bytes(b"a,b\n", "md5")

    digest = write_digest(str(path))
    assert digest == digest_file(str(path))
    assert read_digest(str(path)) == digest
    assert (tmp_path / "table.csv.sha256").read_text() == f"{digest}  table.csv\n"

    # contents already in memory are hashed directly
    assert write_digest(str(path), b"x\n") == digest_bytes(b"x\n")
    assert read_digest(str(path)) == digest_bytes(b"x\n")


def test_logging_setup(tmp_path):
    from ktflag import ext_logging

    log = tmp_path / "run.log"
    ext_logging.setup(verbose=True, log_file=str(log))
    logging.getLogger("ktflag.test").debug("hello")
    logging.shutdown()
    assert "DEBUG ktflag.test: hello" in log.read_text()

    ext_logging.setup()
    assert logging.getLogger().level == logging.WARNING
