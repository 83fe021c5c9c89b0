"""
membership in the cones Z_+[e^{-beta} - 1] and Z_+[e^{beta} - 1], beta > 0

Exponents are moved into root coordinates ("depth" vectors): with x^d = e^{-d.alpha}
for the negative convention and x^d = e^{d.alpha} for the positive one, every cone
generator becomes x^b - 1 for b the root coordinates of a positive root, and the
cone is the set of Z_+-combinations of products of these.

Under any monomial order that refines height, the leading term of such a product is
x^{sum of its roots} with coefficient +1, and products with smaller leading terms
never reach it. Hence the leading term of a cone member is cancelled only by
products whose roots form a Kostant partition of it, which is what the search
branches over.
"""

from dataclasses import dataclass, field
from functools import cache
import logging
import typing

from ktflag.errors import RankMismatchError, SearchExhaustedError
from ktflag.lattice import LaurentPoly
from ktflag.roots import RootSystem

logger = logging.getLogger(__name__)

Sign = typing.Literal["negative_roots", "positive_roots"]
Depth = typing.Tuple[int, ...]
Exps = typing.Tuple[int, ...]

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class Certificate:
    """
    f = sum of coef * prod_beta (e^{-+beta} - 1)^{exps[beta]}, with beta indexed by
    position in ``RootSystem.positive_roots``
    """

    sign: Sign
    terms: typing.Tuple[typing.Tuple[Exps, int], ...] = ()

    member: typing.ClassVar[bool] = True

    def to_json(self) -> typing.List[dict]:
        return [
            {"exps": {str(k): n for k, n in enumerate(exps) if n}, "coef": c}
            for exps, c in self.terms
        ]


@dataclass(frozen=True)
class Refutation:
    sign: Sign
    reason: str = field(default="", compare=False)

    member: typing.ClassVar[bool] = False

    def to_json(self) -> dict:
        return {"member": False}


@dataclass(frozen=True)
class Unknown:
    """the search stopped at its node cap before deciding"""

    sign: Sign
    nodes: int

    member: typing.ClassVar[typing.Optional[bool]] = None

    def to_json(self) -> dict:
        return {"unknown": True, "nodes": self.nodes}


def _depth(rs: RootSystem, weight, sign: Sign) -> typing.Optional[Depth]:
    rc = rs.root_coords(weight)
    if any(c.denominator != 1 for c in rc):
        return None
    d = tuple(int(c) for c in rc)
    if sign == "negative_roots":
        d = tuple(-x for x in d)
    if any(x < 0 for x in d):
        return None
    return d


def ring_membership(f: LaurentPoly, sign: Sign, rs: RootSystem) -> bool:
    """
    whether f lies in Z[e^{-+beta} - 1], i.e. its support lies in -Q+ (resp. Q+)
    """
    return all(_depth(rs, w, sign) is not None for w in f.terms)


# ANCHOR monomial tables
class _Tables:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.roots: typing.List[Depth] = [
            tuple(int(c) for c in rs.root_coords(b)) for b in rs.positive_roots
        ]
        self._partitions: typing.Dict[Depth, typing.List[Exps]] = {}
        self._expansions: typing.Dict[Exps, typing.Dict[Depth, int]] = {}

    def partitions(self, d: Depth) -> typing.List[Exps]:
        """Kostant partitions of d as exponent vectors, fewest parts first"""
        hit = self._partitions.get(d)
        if hit is not None:
            return hit
        found: typing.List[Exps] = []
        m = len(self.roots)

        def rec(rest: Depth, start: int, exps: typing.List[int]):
            if not any(rest):
                found.append(tuple(exps))
                return
            for k in range(start, m):
                b = self.roots[k]
                nxt = tuple(x - y for x, y in zip(rest, b))
                if any(x < 0 for x in nxt):
                    continue
                exps[k] += 1
                rec(nxt, k, exps)
                exps[k] -= 1

        rec(d, 0, [0] * m)
        found.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
        self._partitions[d] = found
        return found

    def expansion(self, exps: Exps) -> typing.Dict[Depth, int]:
        hit = self._expansions.get(exps)
        if hit is not None:
            return hit
        rank = self.rs.rank
        poly: typing.Dict[Depth, int] = {(0,) * rank: 1}
        for k, n in enumerate(exps):
            b = self.roots[k]
            for _ in range(n):
                nxt: typing.Dict[Depth, int] = {}
                for d, c in poly.items():
                    up = tuple(x + y for x, y in zip(d, b))
                    nxt[up] = nxt.get(up, 0) + c
                    nxt[d] = nxt.get(d, 0) - c
                poly = {d: c for d, c in nxt.items() if c}
        self._expansions[exps] = poly
        return poly


@cache
def _tables(type_tag: str, rs: RootSystem) -> _Tables:
    return _Tables(rs)


def _leading(residual: typing.Mapping[Depth, int]) -> Depth:
    return max(residual, key=lambda d: (sum(d), d))


# ANCHOR search
def cone_certificate(
    f: LaurentPoly,
    sign: Sign,
    rs: RootSystem,
    cap: int = DEFAULT_CAP,
) -> typing.Union[Certificate, Refutation]:
    """
    decides whether f lies in Z_+[e^{-beta} - 1] (negative_roots) or
    Z_+[e^{beta} - 1] (positive_roots)

    Args:
        f: the Laurent polynomial to certify
        sign: which cone
        rs: the root system supplying the positive roots
        cap: maximum number of search nodes

    Returns:
        a Certificate whose expansion equals f, or a Refutation

    Raises:
        SearchExhaustedError: the node cap was reached before a decision

    Example:
        >>> rs = build_root_system("A1")
        >>> cone_certificate(LaurentPoly.monomial((-2,)), "negative_roots", rs).to_json()
        [{'exps': {}, 'coef': 1}, {'exps': {'0': 1}, 'coef': 1}]
    """
    if f.rank != rs.rank:
        raise RankMismatchError(f"rank {f.rank} polynomial against {rs.type_tag}")
    if not f:
        return Certificate(sign)

    residual: typing.Dict[Depth, int] = {}
    for w, c in f.items():
        d = _depth(rs, w, sign)
        if d is None:
            return Refutation(sign, f"exponent {w} outside the cone lattice")
        residual[d] = c
    if f.forgetful() < 0:
        return Refutation(sign, "negative coefficient sum")

    tables = _tables(rs.type_tag, rs)
    failed: typing.Set[tuple] = set()
    chosen: typing.List[typing.Tuple[Exps, int]] = []
    nodes = 0

    def search(res: typing.Dict[Depth, int], top_floor: typing.Optional[Depth], start: int) -> bool:
        nonlocal nodes
        if not res:
            return True
        nodes += 1
        if nodes > cap:
            raise SearchExhaustedError(nodes)

        top = _leading(res)
        coef = res[top]
        if coef <= 0:
            return False
        if top != top_floor:
            start = 0
        key = (frozenset(res.items()), start)
        if key in failed:
            return False

        options = tables.partitions(top)
        for j in range(start, len(options)):
            exps = options[j]
            expansion = tables.expansion(exps)
            for k in range(coef, 0, -1):
                nxt = dict(res)
                for d, c in expansion.items():
                    v = nxt.get(d, 0) - k * c
                    if v:
                        nxt[d] = v
                    else:
                        nxt.pop(d, None)
                chosen.append((exps, k))
                if search(nxt, top, j + 1):
                    return True
                chosen.pop()

        failed.add(key)
        return False

    if not search(residual, None, 0):
        logger.debug("no certificate for %s after %d nodes", f, nodes)
        return Refutation(sign, f"search exhausted all {nodes} nodes")

    merged: typing.Dict[Exps, int] = {}
    for exps, k in chosen:
        merged[exps] = merged.get(exps, 0) + k
    logger.debug("certified %s with %d monomials in %d nodes", f, len(merged), nodes)
    return Certificate(sign, tuple(sorted(merged.items(), key=lambda t: (sum(t[0]), t[0]))))


def expand_certificate(cert: Certificate, rs: RootSystem) -> LaurentPoly:
    """re-expands a certificate into the Laurent polynomial it certifies"""
    step = -1 if cert.sign == "negative_roots" else 1
    total = LaurentPoly.zero(rs.rank)
    for exps, c in cert.terms:
        mono = LaurentPoly.const(c, rs.rank)
        for k, n in enumerate(exps):
            if n:
                beta = tuple(step * x for x in rs.positive_roots[k])
                mono = mono * (LaurentPoly.monomial(beta) - 1) ** n
        total = total + mono
    return total


def certify(
    f: LaurentPoly, sign: Sign, rs: RootSystem, cap: int = DEFAULT_CAP
) -> typing.Tuple[str, typing.Union[Certificate, Refutation, Unknown]]:
    """
    cone_certificate folded into a status: "pass", "fail" or "unknown"

    A certificate only passes if its expansion reproduces f.
    """
    try:
        result = cone_certificate(f, sign, rs, cap)
    except SearchExhaustedError as e:
        logger.warning("certificate search for %s stopped after %d nodes", f, e.nodes)
        return "unknown", Unknown(sign, e.nodes)
    if not result.member:
        return "fail", result
    if expand_certificate(result, rs) != f:
        logger.error("certificate for %s does not expand back to it", f)
        return "fail", result
    return "pass", result


def in_monoid(f: LaurentPoly, sign: Sign, rs: RootSystem) -> bool:
    """whether f is a Z_+-combination of e^{-+beta}, beta in Q+"""
    return ring_membership(f, sign, rs) and all(c > 0 for c in f.terms.values())
