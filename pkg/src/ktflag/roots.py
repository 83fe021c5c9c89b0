"""
root systems and Weyl groups of the supported types

Simple indices are 1-based throughout (``S = {2}`` names the second simple
reflection), reduced words are tuples of such indices.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
import logging
import re
import typing

import numpy as np
import sympy

from ktflag.errors import UnsupportedTypeError
from ktflag.lattice import LaurentPoly, Weight, wadd, wscale, wsum

logger = logging.getLogger(__name__)

SUPPORTED_TYPES = ("A1", "A2", "A3", "A4", "A5", "A6", "A1xA1", "B2", "G2")

Subset = typing.FrozenSet[int]


def cartan_matrix(type_tag: str) -> np.ndarray:
    """
    Cartan matrix a_ij = <alpha_j, alpha_i^vee>, whose columns are the simple
    roots in fundamental coordinates

    Raises:
        UnsupportedTypeError: tag is not one of SUPPORTED_TYPES
    """
    match type_tag:
        case "A1xA1":
            return np.array([[2, 0], [0, 2]], dtype=np.int64)
        case "B2":
            return np.array([[2, -2], [-1, 2]], dtype=np.int64)
        case "G2":
            return np.array([[2, -1], [-3, 2]], dtype=np.int64)

    m = re.fullmatch(r"A([1-6])", type_tag or "")
    if not m:
        raise UnsupportedTypeError(f"unsupported root system type {type_tag!r}")
    n = int(m.group(1))
    a = 2 * np.eye(n, dtype=np.int64)
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = -1
    return a


@dataclass(frozen=True)
class WeylElem:
    """
    element of an enumerated Weyl group; equality is by (type, id)
    """

    type_tag: str
    id: int
    word: typing.Tuple[int, ...] = field(compare=False)
    length: int = field(compare=False)
    matrix: typing.Tuple[typing.Tuple[int, ...], ...] = field(
        compare=False, repr=False
    )

    def apply(self, weight: Weight) -> Weight:
        return tuple(sum(m * x for m, x in zip(row, weight)) for row in self.matrix)

    def act(self, f: LaurentPoly) -> LaurentPoly:
        return f.act(self.apply)

    def to_json(self) -> typing.List[int]:
        return list(self.word)

    def __str__(self):
        if not self.word:
            return "e"
        return "s" + "s".join(str(i) for i in self.word)


class RootSystem:
    """
    Cartan data together with the fully enumerated Weyl group

    Use ``build_root_system`` instead of instantiating directly.
    """

    def __init__(self, type_tag: str):
        self.type_tag = type_tag
        self.cartan = cartan_matrix(type_tag)
        self.rank = int(self.cartan.shape[0])
        self.simple_roots: typing.List[Weight] = [
            tuple(int(x) for x in self.cartan[:, j]) for j in range(self.rank)
        ]
        inv = sympy.Matrix(self.cartan.tolist()).inv()
        self._cartan_inv = [
            [Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(self.rank)]
            for i in range(self.rank)
        ]
        self._root_coords: typing.Dict[Weight, typing.Tuple[Fraction, ...]] = {}
        self._bruhat: typing.Dict[typing.Tuple[int, int], bool] = {}
        self._pmobius: typing.Dict[tuple, int] = {}

        self._enumerate()
        self._build_roots()
        logger.debug(
            "built %s: |W|=%d, |positive roots|=%d",
            type_tag,
            len(self.elements),
            len(self.positive_roots),
        )

    # ANCHOR enumeration
    def _generator(self, i: int) -> np.ndarray:
        s = np.eye(self.rank, dtype=np.int64)
        s[:, i] -= self.cartan[:, i]
        return s

    def _enumerate(self):
        gens = [self._generator(i) for i in range(self.rank)]
        ident = np.eye(self.rank, dtype=np.int64)
        mats = [ident]
        words: typing.List[typing.Tuple[int, ...]] = [()]
        index = {ident.tobytes(): 0}
        rmul: typing.List[typing.List[int]] = []

        queue = deque([0])
        while queue:
            k = queue.popleft()
            row = []
            for i, g in enumerate(gens):
                prod = mats[k] @ g
                key = prod.tobytes()
                if key not in index:
                    index[key] = len(mats)
                    mats.append(prod)
                    words.append(words[k] + (i + 1,))
                    queue.append(index[key])
                row.append(index[key])
            rmul.append(row)

        self._index = index
        self._mats = mats
        self._rmul = rmul
        self.elements: typing.List[WeylElem] = [
            WeylElem(
                self.type_tag,
                k,
                words[k],
                len(words[k]),
                tuple(tuple(int(x) for x in r) for r in mats[k]),
            )
            for k in range(len(mats))
        ]
        self._lmul = [
            [index[(gens[i] @ mats[k]).tobytes()] for i in range(self.rank)]
            for k in range(len(mats))
        ]

    def _build_roots(self):
        found: typing.Dict[Weight, typing.Tuple[int, int]] = {}
        for w in self.elements:
            for i, alpha in enumerate(self.simple_roots):
                beta = w.apply(alpha)
                if beta in found or not self.in_qplus(beta):
                    continue
                found[beta] = (w.id, i + 1)

        def key(beta):
            rc = self.root_coords(beta)
            return (sum(rc), tuple(-c for c in rc))

        self.positive_roots: typing.List[Weight] = sorted(found, key=key)
        self._root_origin = found
        self._positive_set = frozenset(self.positive_roots)

    # ANCHOR elements
    @property
    def identity(self) -> WeylElem:
        return self.elements[0]

    def s(self, i: int) -> WeylElem:
        return self.elements[self._rmul[0][i - 1]]

    def rmul(self, w: WeylElem, i: int) -> WeylElem:
        """w * s_i"""
        return self.elements[self._rmul[w.id][i - 1]]

    def lmul(self, i: int, w: WeylElem) -> WeylElem:
        """s_i * w"""
        return self.elements[self._lmul[w.id][i - 1]]

    def element(self, word: typing.Iterable[int]) -> WeylElem:
        w = self.identity
        for i in word:
            if not 1 <= i <= self.rank:
                raise ValueError(f"simple index {i} out of range for {self.type_tag}")
            w = self.rmul(w, i)
        return w

    def mul(self, a: WeylElem, b: WeylElem) -> WeylElem:
        w = a
        for i in b.word:
            w = self.rmul(w, i)
        return w

    def inverse(self, w: WeylElem) -> WeylElem:
        return self.element(reversed(w.word))

    @cached_property
    def longest(self) -> WeylElem:
        return max(self.elements, key=lambda w: w.length)

    def right_descents(self, w: WeylElem) -> typing.List[int]:
        return [
            i for i in range(1, self.rank + 1) if self.rmul(w, i).length < w.length
        ]

    def left_descents(self, w: WeylElem) -> typing.List[int]:
        return [
            i for i in range(1, self.rank + 1) if self.lmul(i, w).length < w.length
        ]

    @property
    def simple_indices(self) -> Subset:
        return frozenset(range(1, self.rank + 1))

    # ANCHOR weights
    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def rho_S(self, S: typing.Iterable[int]) -> Weight:
        """sum of the fundamental weights outside S"""
        S = frozenset(S)
        return tuple(0 if k + 1 in S else 1 for k in range(self.rank))

    def simple_root(self, i: int) -> Weight:
        return self.simple_roots[i - 1]

    def root_coords(self, weight: Weight) -> typing.Tuple[Fraction, ...]:
        """coordinates in the basis of simple roots (exact rationals)"""
        weight = tuple(weight)
        rc = self._root_coords.get(weight)
        if rc is None:
            rc = tuple(
                sum((row[j] * weight[j] for j in range(self.rank)), Fraction(0))
                for row in self._cartan_inv
            )
            self._root_coords[weight] = rc
        return rc

    def in_root_lattice(self, weight: Weight) -> bool:
        return all(c.denominator == 1 for c in self.root_coords(weight))

    def in_qplus(self, weight: Weight) -> bool:
        """membership in the monoid generated by the simple roots"""
        return all(c.denominator == 1 and c >= 0 for c in self.root_coords(weight))

    def height(self, weight: Weight) -> Fraction:
        return sum(self.root_coords(weight), Fraction(0))

    def from_root_coords(self, coords: typing.Sequence[int]) -> Weight:
        return wsum(
            (wscale(c, a) for c, a in zip(coords, self.simple_roots)), self.rank
        )

    def is_positive_root(self, weight: Weight) -> bool:
        return tuple(weight) in self._positive_set

    def is_root(self, weight: Weight) -> bool:
        weight = tuple(weight)
        return weight in self._positive_set or tuple(-x for x in weight) in self._positive_set

    def levi_roots(self, S: typing.Iterable[int]) -> typing.List[Weight]:
        """positive roots in the span of the simple roots indexed by S"""
        S = frozenset(S)
        return [
            b
            for b in self.positive_roots
            if all(c == 0 for k, c in enumerate(self.root_coords(b)) if k + 1 not in S)
        ]

    def reflection(self, beta: Weight) -> WeylElem:
        """the reflection s_beta for a positive root beta"""
        u_id, i = self._root_origin[tuple(beta)]
        u = self.elements[u_id]
        return self.mul(self.mul(u, self.s(i)), self.inverse(u))

    def inversions(self, w: WeylElem) -> typing.List[Weight]:
        """positive roots nu with w^{-1} nu negative"""
        winv = self.inverse(w)
        return [b for b in self.positive_roots if not self.is_positive_root(winv.apply(b))]

    def inversion_count(self, w: WeylElem) -> int:
        """number of positive roots sent to negative roots by w"""
        return sum(1 for b in self.positive_roots if not self.is_positive_root(w.apply(b)))

    # ANCHOR Bruhat order
    def bruhat_leq(self, v: WeylElem, w: WeylElem) -> bool:
        key = (v.id, w.id)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit

        if v.length > w.length:
            res = False
        elif v.length == w.length:
            res = v.id == w.id
        elif v.length == 0:
            res = True
        else:
            i = self.left_descents(w)[0]
            sw = self.lmul(i, w)
            sv = self.lmul(i, v)
            if sv.length < v.length:
                res = self.bruhat_leq(sv, sw)
            else:
                res = self.bruhat_leq(v, sw)
        self._bruhat[key] = res
        return res

    def interval(self, v: WeylElem, w: WeylElem) -> typing.List[WeylElem]:
        return [
            x
            for x in self.elements
            if self.bruhat_leq(v, x) and self.bruhat_leq(x, w)
        ]

    def mobius(self, v: WeylElem, w: WeylElem) -> int:
        if not self.bruhat_leq(v, w):
            return 0
        return -1 if (v.length + w.length) % 2 else 1

    def poset_mobius(
        self, v: WeylElem, w: WeylElem, S: typing.Iterable[int] = ()
    ) -> int:
        """
        Moebius function of the Bruhat order restricted to the minimal coset
        representatives of W/W_S, by the recursive definition
        """
        S = frozenset(S)
        if not S:
            return self.mobius(v, w)
        key = (v.id, w.id, S)
        hit = self._pmobius.get(key)
        if hit is not None:
            return hit
        if v.id == w.id:
            res = 1
        elif not self.bruhat_leq(v, w):
            res = 0
        else:
            res = -sum(
                self.poset_mobius(v, t, S)
                for t in self.min_coset_reps(S)
                if t.id != w.id and self.bruhat_leq(v, t) and self.bruhat_leq(t, w)
            )
        self._pmobius[key] = res
        return res

    # ANCHOR parabolics
    def parabolic_subgroup(self, S: typing.Iterable[int]) -> typing.List[WeylElem]:
        S = frozenset(S)
        return [w for w in self.elements if set(w.word) <= S]

    @cache
    def min_coset_reps(self, S: Subset = frozenset()) -> typing.Tuple[WeylElem, ...]:
        """minimal length representatives of W/W_S, in enumeration order"""
        S = frozenset(S)
        return tuple(
            w for w in self.elements if all(self.rmul(w, i).length > w.length for i in S)
        )

    def is_min_coset_rep(self, w: WeylElem, S: typing.Iterable[int]) -> bool:
        return all(self.rmul(w, i).length > w.length for i in S)

    def coset_rep(self, w: WeylElem, S: typing.Iterable[int]) -> WeylElem:
        """minimal length element of w W_S"""
        S = sorted(frozenset(S))
        moved = True
        while moved:
            moved = False
            for i in S:
                ws = self.rmul(w, i)
                if ws.length < w.length:
                    w, moved = ws, True
        return w

    def max_coset_rep(self, w: WeylElem, S: typing.Iterable[int]) -> WeylElem:
        """maximal length element of w W_S"""
        S = sorted(frozenset(S))
        moved = True
        while moved:
            moved = False
            for i in S:
                ws = self.rmul(w, i)
                if ws.length > w.length:
                    w, moved = ws, True
        return w

    def longest_element(self, S: typing.Iterable[int]) -> WeylElem:
        return self.max_coset_rep(self.identity, S)

    def coset(self, w: WeylElem, S: typing.Iterable[int]) -> typing.List[WeylElem]:
        return [self.mul(w, x) for x in self.parabolic_subgroup(S)]

    def __repr__(self):
        return f"RootSystem({self.type_tag})"


@cache
def build_root_system(type_tag: str) -> RootSystem:
    """
    builds (once per process) the root system and Weyl group of a supported type

    Raises:
        UnsupportedTypeError: unknown tag
    """
    if type_tag not in SUPPORTED_TYPES:
        raise UnsupportedTypeError(f"unsupported root system type {type_tag!r}")
    return RootSystem(type_tag)


def bruhat_leq(v: WeylElem, w: WeylElem) -> bool:
    return build_root_system(v.type_tag).bruhat_leq(v, w)


def mobius(v: WeylElem, w: WeylElem) -> int:
    return build_root_system(v.type_tag).mobius(v, w)


def min_coset_reps(rs: RootSystem, S: typing.Iterable[int] = ()) -> typing.Tuple[WeylElem, ...]:
    return rs.min_coset_reps(frozenset(S))


def parse_parabolic(text: typing.Optional[str]) -> Subset:
    """
    parses "1,2" into frozenset({1, 2}); empty or None gives the empty set
    """
    if not text:
        return frozenset()
    return frozenset(int(x) for x in str(text).replace(" ", "").split(",") if x)


def weyl_character(rs: RootSystem, weight: Weight) -> LaurentPoly:
    """
    character of the irreducible module with dominant highest weight, by the
    Weyl character formula (exact ratio of alternants)

    Example:
        >>> weyl_character(build_root_system("A1"), (1,)).render()
        'x1^-1 + x1'
    """
    if any(c < 0 for c in weight):
        raise ValueError(f"{weight} is not dominant")
    shifted = wadd(tuple(weight), rs.rho)
    num = LaurentPoly.zero(rs.rank)
    den = LaurentPoly.zero(rs.rank)
    for w in rs.elements:
        sign = -1 if w.length % 2 else 1
        num = num + LaurentPoly.monomial(w.apply(shifted), sign)
        den = den + LaurentPoly.monomial(w.apply(rs.rho), sign)
    return num.exact_div(den)


def parse_word(rs: RootSystem, text: str) -> WeylElem:
    """
    parses the printed form of an element ("e", "s1s2", or "1.2") back into it
    """
    text = (text or "").strip()
    if text in ("", "e"):
        return rs.identity
    digits = re.findall(r"\d+", text)
    if not digits:
        raise ValueError(f"cannot parse Weyl group element {text!r}")
    return rs.element(int(d) for d in digits)


def render_in_roots(rs: RootSystem, f: LaurentPoly) -> str:
    """
    renders f in x_i = e^{alpha_i} when its support lies in the root lattice,
    in z_i = e^{omega_i} otherwise
    """
    if all(rs.in_root_lattice(w) for w in f.terms):
        return f.render(lambda w: [int(c) for c in rs.root_coords(w)], var="x")
    return f.render(var="z")
