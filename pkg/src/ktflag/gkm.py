"""
fixed-point localization model of K_T(G/P)

A class is the tuple of its restrictions to the T-fixed points wP, w running over
the minimal coset representatives W^P in enumeration order.

Conventions (pinned by ``calibrate_demazure``):
    * tangent weights at wB are w(negative roots); the point class at e is
      prod_{beta > 0} (1 - e^beta)
    * [L(lambda)](w) = e^{-w lambda}
    * ([O_{vY}])(u) = v . ([O_Y](v^{-1} u)) and X^w = w_o X_{w_o w}
"""

from dataclasses import dataclass
from functools import cache, cached_property
import logging
import typing

from ktflag.errors import (
    ConventionError,
    InexactDivisionError,
    IndexRangeError,
    KtflagError,
    NotExtendableError,
    NotMinimalCosetError,
    ParabolicUnsupportedError,
    SpaceMismatchError,
)
from ktflag.lattice import (
    LaurentPoly,
    Weight,
    exp_weight,
    one_minus_exp,
    product,
    wneg,
    wscale,
)
from ktflag.roots import RootSystem, WeylElem, build_root_system

logger = logging.getLogger(__name__)

Variant = typing.Literal["ordinary", "opposite"]
Basis = typing.Literal["ordinary_O", "opposite_O", "dual_xi", "dualizing"]
Family = typing.Literal["p", "b", "c", "d"]
DemazureVariant = typing.Tuple[str, int]

DEMAZURE_VARIANTS: typing.Tuple[DemazureVariant, ...] = (
    ("right", 1),
    ("right", -1),
    ("left", 1),
    ("left", -1),
)


# ANCHOR spaces
class FlagSpace:
    """
    G/P for P the standard parabolic generated by the simple indices in S

    Obtain instances through ``flag_space`` so that caches are shared.
    """

    def __init__(self, rs: RootSystem, parabolic: typing.Iterable[int] = ()):
        self.rs = rs
        self.parabolic = frozenset(parabolic)
        if not self.parabolic <= rs.simple_indices:
            raise IndexRangeError(f"{sorted(self.parabolic)} is not a set of simple indices")
        self.rank = rs.rank
        self.points: typing.Tuple[WeylElem, ...] = rs.min_coset_reps(self.parabolic)
        self._pos = {w.id: k for k, w in enumerate(self.points)}
        self._classes: typing.Dict[tuple, "GKMClass"] = {}
        self._constants: typing.Dict[tuple, "ExpansionCoeffs"] = {}

    @property
    def key(self) -> typing.Tuple[str, typing.FrozenSet[int]]:
        return (self.rs.type_tag, self.parabolic)

    @property
    def is_full(self) -> bool:
        return not self.parabolic

    def __eq__(self, other):
        return isinstance(other, FlagSpace) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FlagSpace({self.rs.type_tag}, S={sorted(self.parabolic)})"

    def position(self, w: WeylElem) -> int:
        try:
            return self._pos[w.id]
        except KeyError:
            raise NotMinimalCosetError(
                f"{w} is not a minimal coset representative for S={sorted(self.parabolic)}"
            ) from None

    def contains(self, w: WeylElem) -> bool:
        return w.id in self._pos

    def rep(self, w: WeylElem) -> WeylElem:
        return self.rs.coset_rep(w, self.parabolic)

    @cached_property
    def tangent_roots(self) -> typing.List[Weight]:
        levi = set(self.rs.levi_roots(self.parabolic))
        return [b for b in self.rs.positive_roots if b not in levi]

    @property
    def dimension(self) -> int:
        return len(self.tangent_roots)

    def one(self) -> "GKMClass":
        return GKMClass(self, tuple(LaurentPoly.one(self.rank) for _ in self.points))

    def zero(self) -> "GKMClass":
        return GKMClass(self, tuple(LaurentPoly.zero(self.rank) for _ in self.points))

    def from_function(
        self, fn: typing.Callable[[WeylElem], LaurentPoly]
    ) -> "GKMClass":
        return GKMClass(self, tuple(fn(w) for w in self.points))

    def curves(self) -> typing.Iterator[typing.Tuple[int, int, Weight]]:
        """T-curves as (position, position, weight), each listed from both ends"""
        for k, w in enumerate(self.points):
            for beta in self.tangent_roots:
                other = self.rep(self.rs.mul(w, self.rs.reflection(beta)))
                if other.id != w.id:
                    yield k, self._pos[other.id], w.apply(beta)

    @cached_property
    def _euler_data(self):
        """
        per point: the inverse unit and complementary factor product such that
        1 / prod(1 - e^{w beta}) = unit_inv * cofactor / prod_{gamma in U}(1 - e^gamma)
        """
        per_point = []
        union: typing.Set[Weight] = set()
        for w in self.points:
            unit_inv = LaurentPoly.one(self.rank)
            factors = set()
            for beta in self.tangent_roots:
                mu = w.apply(beta)
                if self.rs.is_positive_root(mu):
                    factors.add(mu)
                else:
                    # 1 - e^mu = -e^mu (1 - e^{-mu})
                    factors.add(wneg(mu))
                    unit_inv = unit_inv * LaurentPoly.monomial(wneg(mu), -1)
            per_point.append((unit_inv, factors))
            union |= factors
        denominator = sorted(union)
        cofactors = [
            unit_inv * product((one_minus_exp(g) for g in denominator if g not in fs), self.rank)
            for unit_inv, fs in per_point
        ]
        return cofactors, denominator


@cache
def flag_space(rs: typing.Union[RootSystem, str], parabolic: typing.FrozenSet[int] = frozenset()) -> FlagSpace:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return FlagSpace(rs, frozenset(parabolic))


def space_of(type_tag: str, parabolic: typing.Iterable[int] = ()) -> FlagSpace:
    return flag_space(build_root_system(type_tag), frozenset(parabolic))


# ANCHOR classes
@dataclass(frozen=True, eq=False)
class GKMClass:
    """
    element of K_T(G/P) as its tuple of fixed-point restrictions
    """

    space: FlagSpace
    values: typing.Tuple[LaurentPoly, ...]

    def __call__(self, w: WeylElem) -> LaurentPoly:
        return self.values[self.space.position(w)]

    at = __call__

    def _same(self, other: "GKMClass"):
        if self.space != other.space:
            raise SpaceMismatchError(f"{self.space} against {other.space}")

    def __add__(self, other: "GKMClass") -> "GKMClass":
        self._same(other)
        return GKMClass(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "GKMClass") -> "GKMClass":
        self._same(other)
        return GKMClass(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "GKMClass":
        return GKMClass(self.space, tuple(-a for a in self.values))

    def __mul__(self, other) -> "GKMClass":
        if isinstance(other, GKMClass):
            self._same(other)
            return GKMClass(self.space, tuple(a * b for a, b in zip(self.values, other.values)))
        if isinstance(other, (LaurentPoly, int)):
            return GKMClass(self.space, tuple(a * other for a in self.values))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GKMClass):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def __hash__(self):
        return hash((self.space.key, self.values))

    def divide_pointwise(self, other: "GKMClass") -> "GKMClass":
        self._same(other)
        return GKMClass(
            self.space, tuple(a.exact_div(b) for a, b in zip(self.values, other.values))
        )

    def star(self) -> "GKMClass":
        return GKMClass(self.space, tuple(a.star() for a in self.values))

    def support(self) -> typing.List[WeylElem]:
        return [w for w, a in zip(self.space.points, self.values) if a]

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_json(self) -> typing.List[dict]:
        return [
            {"w": list(w.word), "value": a.to_json()}
            for w, a in zip(self.space.points, self.values)
        ]


class ExpansionCoeffs:
    """
    coefficients of a class in one of the Schubert-type bases, keyed by W^P
    """

    def __init__(self, space: FlagSpace, coeffs: typing.Mapping[int, LaurentPoly]):
        self.space = space
        self._coeffs = {k: c for k, c in coeffs.items() if c}

    def __getitem__(self, w: WeylElem) -> LaurentPoly:
        return self._coeffs.get(w.id, LaurentPoly.zero(self.space.rank))

    def items(self) -> typing.List[typing.Tuple[WeylElem, LaurentPoly]]:
        return [(w, self._coeffs[w.id]) for w in self.space.points if w.id in self._coeffs]

    def support(self) -> typing.List[WeylElem]:
        return [w for w, _ in self.items()]

    def __eq__(self, other):
        if not isinstance(other, ExpansionCoeffs):
            return NotImplemented
        return self.space == other.space and self._coeffs == other._coeffs

    def __add__(self, other: "ExpansionCoeffs") -> "ExpansionCoeffs":
        merged = dict(self._coeffs)
        for k, c in other._coeffs.items():
            merged[k] = merged.get(k, LaurentPoly.zero(self.space.rank)) + c
        return ExpansionCoeffs(self.space, merged)

    def map(self, fn: typing.Callable[[LaurentPoly], LaurentPoly]) -> "ExpansionCoeffs":
        return ExpansionCoeffs(self.space, {k: fn(c) for k, c in self._coeffs.items()})

    def to_json(self) -> typing.List[dict]:
        return [{"w": list(w.word), "coef": c.to_json()} for w, c in self.items()]

    def __repr__(self):
        body = ", ".join(f"{w}: {c.render()}" for w, c in self.items())
        return f"ExpansionCoeffs({{{body}}})"


# ANCHOR Demazure operators
def _point_class_values(rs: RootSystem) -> typing.List[LaurentPoly]:
    values = [LaurentPoly.zero(rs.rank) for _ in rs.elements]
    values[rs.identity.id] = product((one_minus_exp(b) for b in rs.positive_roots), rs.rank)
    return values


def demazure(
    rs: RootSystem,
    values: typing.Sequence[LaurentPoly],
    i: int,
    variant: DemazureVariant = ("right", 1),
) -> typing.List[LaurentPoly]:
    """
    applies one Demazure operator to a full-flag restriction tuple (indexed by element id)

    (D_i g)(v) = (g(v) - e^mu g(v')) / (1 - e^mu), where for the right-hand variant
    v' = v s_i and mu = +-v(alpha_i), and for the left-hand one v' = s_i v and
    mu = +-alpha_i.

    Raises:
        InexactDivisionError: the tuple is not a GKM class
    """
    side, sign = variant
    alpha = rs.simple_root(i)
    out = []
    for v in rs.elements:
        if side == "right":
            nb, mu = rs.rmul(v, i), v.apply(alpha)
        else:
            nb, mu = rs.lmul(i, v), alpha
        if sign < 0:
            mu = wneg(mu)
        num = values[v.id] - exp_weight(mu) * values[nb.id]
        out.append(num.exact_div(one_minus_exp(mu)))
    return out


@cache
def _demazure_table(type_tag: str, variant: DemazureVariant) -> typing.List[typing.List[LaurentPoly]]:
    """restrictions of every ordinary full-flag structure sheaf, indexed by element id"""
    rs = build_root_system(type_tag)
    table: typing.List[typing.Optional[typing.List[LaurentPoly]]] = [None] * len(rs.elements)
    table[rs.identity.id] = _point_class_values(rs)
    # enumeration order is by length, so every prefix is filled before it is used
    for w in rs.elements[1:]:
        parent = rs.element(w.word[:-1])
        table[w.id] = demazure(rs, table[parent.id], w.word[-1], variant)
    return table


def _variant_duality(rs: RootSystem, space: FlagSpace, table: typing.List[typing.List[LaurentPoly]]) -> bool:
    """<[O_{X_w}], xi^v> = delta_{v,w}, with xi built from the candidate table"""
    wo = rs.longest
    ordinary = [GKMClass(space, tuple(table[w.id])) for w in rs.elements]
    opposite = [
        space.from_function(lambda x, w=w: wo.act(table[rs.mul(wo, w).id][rs.mul(wo, x).id]))
        for w in rs.elements
    ]
    for v in rs.elements:
        xi = space.zero()
        for w in rs.elements:
            m = rs.mobius(v, w)
            if m:
                xi = xi + opposite[w.id] * m
        for w in rs.elements:
            if euler_char(ordinary[w.id] * xi) != (1 if v == w else 0):
                return False
    return True


def _variant_pins(rs: RootSystem, variant: DemazureVariant) -> bool:
    space = flag_space(rs)
    try:
        table = _demazure_table(rs.type_tag, variant)
        for w in rs.elements:
            cls = GKMClass(space, tuple(table[w.id]))
            support = {v.id for v in cls.support()}
            if support != {v.id for v in rs.elements if rs.bruhat_leq(v, w)}:
                return False
            diag = product(
                (one_minus_exp(b) for b in rs.positive_roots
                 if rs.is_positive_root(rs.inverse(w).apply(b))),
                rs.rank,
            )
            if cls(w) != diag:
                return False
            if euler_char(cls) != 1:
                return False
            if not gkm_divisible(cls):
                return False
        if not _variant_duality(rs, space, table):
            return False
    except KtflagError as e:
        logger.debug("variant %s fails on %s: %s", variant, rs.type_tag, e)
        return False
    return True


def variant_report(types: typing.Sequence[str] = ("A1", "A2", "B2")) -> typing.Dict[DemazureVariant, bool]:
    """whether each Demazure variant passes the pins on every listed type"""
    return {
        variant: all(_variant_pins(build_root_system(t), variant) for t in types)
        for variant in DEMAZURE_VARIANTS
    }


def calibrate_demazure(types: typing.Sequence[str] = ("A1", "A2", "B2")) -> DemazureVariant:
    """
    checks every Demazure variant against the pins (exact divisions, chi = 1,
    support exactly the Bruhat interval, diagonal values, GKM divisibility)

    Returns:
        the unique passing variant

    Raises:
        ConventionError: zero or several variants pass
    """
    passing = [variant for variant, ok in variant_report(types).items() if ok]
    logger.info("demazure calibration on %s: passing variants %s", list(types), passing)
    if len(passing) != 1:
        raise ConventionError(f"expected exactly one passing Demazure variant, got {passing}")
    return passing[0]


@cache
def demazure_convention() -> DemazureVariant:
    return calibrate_demazure()


def _ordinary_full(rs: RootSystem, w: WeylElem) -> typing.List[LaurentPoly]:
    return _demazure_table(rs.type_tag, demazure_convention())[w.id]


# ANCHOR basis classes
def _cached(space: FlagSpace, key: tuple, build: typing.Callable[[], GKMClass]) -> GKMClass:
    hit = space._classes.get(key)
    if hit is None:
        hit = build()
        space._classes[key] = hit
    return hit


def schubert_class(space: FlagSpace, w: WeylElem, variant: Variant = "ordinary") -> GKMClass:
    """
    structure sheaf of the Schubert variety X_w (ordinary) or X^w (opposite)

    Raises:
        NotMinimalCosetError: w is not in W^P
    """
    space.position(w)
    rs = space.rs

    def build():
        match variant:
            case "ordinary":
                full = _ordinary_full(rs, rs.max_coset_rep(w, space.parabolic))
                return space.from_function(lambda v: full[v.id])
            case "opposite":
                wo = rs.longest
                full = _ordinary_full(rs, rs.mul(wo, w))
                return space.from_function(lambda v: wo.act(full[rs.mul(wo, v).id]))
            case _:
                raise ValueError(f"unknown variant {variant}")

    return _cached(space, ("schubert", variant, w.id), build)


def xi_class(space: FlagSpace, v: WeylElem) -> GKMClass:
    """dual structure sheaf class, sum over w >= v of mu(v, w) [O_{X^w}]"""
    space.position(v)
    rs = space.rs

    def build():
        total = space.zero()
        for w in space.points:
            m = rs.poset_mobius(v, w, space.parabolic)
            if m:
                total = total + schubert_class(space, w, "opposite") * m
        return total

    return _cached(space, ("xi", v.id), build)


def line_bundle_class(space: FlagSpace, weight: Weight) -> GKMClass:
    """
    Raises:
        NotExtendableError: weight is not W_S-invariant
    """
    weight = tuple(weight)
    bad = [i for i in space.parabolic if weight[i - 1] != 0]
    if bad:
        raise NotExtendableError(f"{weight} does not extend to P (simple indices {sorted(bad)})")
    return space.from_function(lambda w: exp_weight(wneg(w.apply(weight))))


def boundary_ideal_class(space: FlagSpace, w: WeylElem) -> GKMClass:
    """[O_{X_w}(-boundary)] = sum over v <= w of mu(v, w) [O_{X_v}]"""
    _require_full(space, "boundary ideal classes")
    rs = space.rs
    total = space.zero()
    for v in space.points:
        m = rs.mobius(v, w)
        if m:
            total = total + schubert_class(space, v, "ordinary") * m
    return total


def _require_full(space: FlagSpace, what: str):
    if not space.is_full:
        raise ParabolicUnsupportedError(f"{what} are only implemented on G/B")


def dualizing_class(space: FlagSpace, w: WeylElem, variant: Variant = "opposite") -> GKMClass:
    """
    Raises:
        ParabolicUnsupportedError: space is not the full flag variety
    """
    _require_full(space, "dualizing classes")
    rs = space.rs

    def build():
        twist = line_bundle_class(space, wneg(rs.rho))
        match variant:
            case "opposite":
                return twist * xi_class(space, w) * exp_weight(rs.rho)
            case "ordinary":
                return twist * boundary_ideal_class(space, w) * exp_weight(wneg(rs.rho))
            case _:
                raise ValueError(f"unknown variant {variant}")

    return _cached(space, ("dualizing", variant, w.id), build)


def canonical_class(space: FlagSpace) -> GKMClass:
    """[omega_{G/B}] = [L(-2 rho)]"""
    _require_full(space, "canonical classes")
    return line_bundle_class(space, wscale(-2, space.rs.rho))


def kostant_kumar_tau(space: FlagSpace, w: WeylElem) -> GKMClass:
    """tau^w := star(xi^{w^{-1}})"""
    _require_full(space, "tau classes")
    return xi_class(space, space.rs.inverse(w)).star()


# ANCHOR integration
def euler_char(cls: GKMClass) -> LaurentPoly:
    """
    equivariant Euler characteristic by fixed-point localization

    Raises:
        InexactDivisionError: cls violates GKM divisibility
    """
    space = cls.space
    cofactors, denominator = space._euler_data
    numerator = LaurentPoly.zero(space.rank)
    for value, cof in zip(cls.values, cofactors):
        if value:
            numerator = numerator + value * cof
    for g in denominator:
        numerator = numerator.exact_div(one_minus_exp(g))
    return numerator


def pairing(a: GKMClass, b: GKMClass) -> LaurentPoly:
    return euler_char(a * b)


def gkm_divisible(cls: GKMClass) -> bool:
    """whether gamma(w) - gamma(w') is divisible by 1 - e^{w beta} along every T-curve"""
    for k, k2, mu in cls.space.curves():
        diff = cls.values[k] - cls.values[k2]
        try:
            diff.exact_div(one_minus_exp(mu))
        except InexactDivisionError:
            return False
    return True


# ANCHOR expansion
def basis_class(space: FlagSpace, basis: Basis, w: WeylElem) -> GKMClass:
    match basis:
        case "ordinary_O":
            return schubert_class(space, w, "ordinary")
        case "opposite_O":
            return schubert_class(space, w, "opposite")
        case "dual_xi":
            return xi_class(space, w)
        case "dualizing":
            return dualizing_class(space, w, "opposite")
        case _:
            raise ValueError(f"unknown basis {basis}")


def expand(cls: GKMClass, basis: Basis) -> ExpansionCoeffs:
    """
    coefficients of cls in the chosen basis by Bruhat-triangular elimination

    Ordinary classes are supported below their index, so the sweep runs from the
    longest element down; the other bases are supported above and sweep upward.

    Raises:
        InexactDivisionError: cls is not in the span of the basis
    """
    space = cls.space
    descending = basis == "ordinary_O"
    order = sorted(space.points, key=lambda w: w.length, reverse=descending)
    residual = list(cls.values)
    coeffs: typing.Dict[int, LaurentPoly] = {}
    for w in order:
        k = space.position(w)
        if not residual[k]:
            continue
        b = basis_class(space, basis, w)
        c = residual[k].exact_div(b.values[k])
        coeffs[w.id] = c
        residual = [r - c * bv for r, bv in zip(residual, b.values)]
    leftover = [r for r in residual if r]
    if leftover:
        raise InexactDivisionError(leftover[0], LaurentPoly.one(space.rank), "not in span")
    return ExpansionCoeffs(space, coeffs)


def expand_by_pairing(cls: GKMClass, basis: Basis) -> ExpansionCoeffs:
    """
    coefficients from the dual basis: pair with xi for ordinary_O, with ordinary
    structure sheaves for dual_xi
    """
    space = cls.space
    match basis:
        case "ordinary_O":
            dual = lambda w: xi_class(space, w)  # noqa: E731
        case "dual_xi":
            dual = lambda w: schubert_class(space, w, "ordinary")  # noqa: E731
        case _:
            raise ValueError(f"no dual basis implemented for {basis}")
    return ExpansionCoeffs(space, {w.id: pairing(cls, dual(w)) for w in space.points})


# ANCHOR structure constants
def structure_constants(space: FlagSpace, u: WeylElem, v: WeylElem, family: Family) -> ExpansionCoeffs:
    """
    p: xi^u xi^v in the xi basis; b: ordinary products; c: opposite products;
    d: dualizing products divided by [omega_{G/B}], full flag only
    """
    key = (family, u.id, v.id)
    hit = space._constants.get(key)
    if hit is not None:
        return hit

    match family:
        case "p":
            res = expand(xi_class(space, u) * xi_class(space, v), "dual_xi")
        case "b":
            prod = schubert_class(space, u, "ordinary") * schubert_class(space, v, "ordinary")
            res = expand(prod, "ordinary_O")
        case "c":
            prod = schubert_class(space, u, "opposite") * schubert_class(space, v, "opposite")
            res = expand(prod, "opposite_O")
        case "d":
            _require_full(space, "d-constants")
            prod = dualizing_class(space, u) * dualizing_class(space, v)
            res = expand(prod.divide_pointwise(canonical_class(space)), "dualizing")
        case _:
            raise ValueError(f"unknown family {family}")

    space._constants[key] = res
    return res


def parabolic_p_from_B(rs: RootSystem, u: WeylElem, v: WeylElem, parabolic: typing.Iterable[int]) -> ExpansionCoeffs:
    """p(P) as the sum of p(B) over the cosets u W_P and v W_P"""
    S = frozenset(parabolic)
    space = flag_space(rs, S)
    full = flag_space(rs)
    space.position(u)
    space.position(v)
    total: typing.Dict[int, LaurentPoly] = {}
    for u2 in rs.coset(u, S):
        for v2 in rs.coset(v, S):
            consts = structure_constants(full, u2, v2, "p")
            for w in space.points:
                c = consts[w]
                if c:
                    total[w.id] = total.get(w.id, LaurentPoly.zero(rs.rank)) + c
    return ExpansionCoeffs(space, total)


# ANCHOR translated and Richardson classes
def translated_class(space: FlagSpace, v: WeylElem, w: WeylElem) -> GKMClass:
    """[O_{v X_w}] for v in W and w in W^P"""
    rs = space.rs
    base = schubert_class(space, w, "ordinary")
    vinv = rs.inverse(v)
    return space.from_function(lambda u: v.act(base(space.rep(rs.mul(vinv, u)))))


def translation_coeffs(space: FlagSpace, v: WeylElem, w: WeylElem) -> ExpansionCoeffs:
    """f^v_{w,u}: expansion of [O_{v X_w}] in the ordinary basis"""
    return expand(translated_class(space, v, w), "ordinary_O")


def translation_recursion(space: FlagSpace, v: WeylElem, w: WeylElem) -> ExpansionCoeffs:
    """
    f^v_{w,u} by induction on the length of v (full flag):
    [O_{v s X_w}] = e^{-v alpha}[O_{v X_w}] - (e^{-v alpha} - 1)[O_{v X_{s w}}] when sw > w,
    and [O_{v s X_w}] = [O_{v X_w}] otherwise
    """
    _require_full(space, "translation recursions")
    rs = space.rs

    @cache
    def rec(vid: int, wid: int) -> ExpansionCoeffs:
        vv, ww = rs.elements[vid], rs.elements[wid]
        if vv.length == 0:
            return ExpansionCoeffs(space, {wid: LaurentPoly.one(rs.rank)})
        i = vv.word[-1]
        prev = rs.element(vv.word[:-1])
        sw = rs.lmul(i, ww)
        if sw.length < ww.length:
            return rec(prev.id, wid)
        a = exp_weight(wneg(prev.apply(rs.simple_root(i))))
        first = rec(prev.id, wid).map(lambda c: a * c)
        second = rec(prev.id, sw.id).map(lambda c: (a - 1) * c)
        return first + second.map(lambda c: -c)

    return rec(v.id, w.id)


def opposite_in_ordinary(space: FlagSpace, w: WeylElem) -> ExpansionCoeffs:
    """e_{w,u}: [O_{X^w}] = sum_u e_{w,u} [O_{X_u}]"""
    return expand(schubert_class(space, w, "opposite"), "ordinary_O")


def richardson_class(space: FlagSpace, v: WeylElem, w: WeylElem) -> GKMClass:
    """[O_{X_w cap X^v}], zero unless v <= w"""
    return schubert_class(space, w, "ordinary") * schubert_class(space, v, "opposite")


# ANCHOR change of parabolic
def pullback(cls: GKMClass) -> GKMClass:
    """pullback along G/B -> G/P"""
    space = cls.space
    full = flag_space(space.rs)
    return full.from_function(lambda w: cls(space.rep(w)))


def embed_element(small: RootSystem, big: RootSystem, simple_map: typing.Mapping[int, int], w: WeylElem) -> WeylElem:
    return big.element(simple_map[i] for i in w.word)


def embed_poly(small: RootSystem, big: RootSystem, simple_map: typing.Mapping[int, int], f: LaurentPoly) -> LaurentPoly:
    """
    carries a polynomial supported in the root lattice of ``small`` into ``big``,
    sending alpha_i to alpha_{simple_map[i]}
    """

    def move(weight: Weight) -> Weight:
        rc = small.root_coords(weight)
        if any(c.denominator != 1 for c in rc):
            raise ValueError(f"{weight} is not in the root lattice of {small.type_tag}")
        coords = [0] * big.rank
        for i, c in enumerate(rc):
            coords[simple_map[i + 1] - 1] = int(c)
        return big.from_root_coords(coords)

    return f.substitute(move, big.rank)


def levi_restrict(
    cls: GKMClass, small: FlagSpace, simple_map: typing.Mapping[int, int]
) -> typing.Tuple[LaurentPoly, ...]:
    """
    restriction of a class on G/Q to the fixed points of the Levi flag variety
    L/Q_L, where L has the root system of ``small`` embedded by simple_map
    """
    big = cls.space.rs
    return tuple(cls(embed_element(small.rs, big, simple_map, x)) for x in small.points)


# ANCHOR relations between structure constants
def _sign(*lengths: int) -> int:
    return -1 if sum(lengths) % 2 else 1


def c_from_p(space: FlagSpace, u: WeylElem, v: WeylElem) -> ExpansionCoeffs:
    """
    c^w_{u,v} = (-1)^{l(u)+l(v)} sum_theta (-1)^{l(theta)} e^{-rho} d^theta_w star(p^theta_{u,v}),
    with [L(-rho)][O_{X^theta}] = sum_w d^theta_w [O_{X^w}]

    Follows from star(xi^w) = (-1)^{l(w)} e^rho [L(rho)][O_{X^w}]; full flag only.
    """
    _require_full(space, "the c/p relation")
    rs = space.rs
    twist = line_bundle_class(space, wneg(rs.rho))
    scale = exp_weight(wneg(rs.rho))
    p = structure_constants(space, u, v, "p")
    total = ExpansionCoeffs(space, {})
    for theta, coef in p.items():
        d = expand(twist * schubert_class(space, theta, "opposite"), "opposite_O")
        factor = coef.star() * scale * _sign(u.length, v.length, theta.length)
        total = total + d.map(lambda c: c * factor)
    return total


def c_from_p_mobius(space: FlagSpace, u: WeylElem, v: WeylElem) -> ExpansionCoeffs:
    """c^w_{u,v} = (-1)^{l(w)} sum over u <= y, v <= z, theta <= w of (-1)^{l(theta)} p^theta_{y,z}"""
    _require_full(space, "the c/p relation")
    rs = space.rs
    inner: typing.Dict[int, LaurentPoly] = {}
    for y in space.points:
        if not rs.bruhat_leq(u, y):
            continue
        for z in space.points:
            if not rs.bruhat_leq(v, z):
                continue
            for theta, coef in structure_constants(space, y, z, "p").items():
                inner[theta.id] = inner.get(theta.id, LaurentPoly.zero(rs.rank)) + coef * _sign(theta.length)
    coeffs = {}
    for w in space.points:
        total = LaurentPoly.zero(rs.rank)
        for tid, c in inner.items():
            if rs.bruhat_leq(rs.elements[tid], w):
                total = total + c
        coeffs[w.id] = total * _sign(w.length)
    return ExpansionCoeffs(space, coeffs)


def p_from_c_mobius(space: FlagSpace, u: WeylElem, v: WeylElem) -> ExpansionCoeffs:
    """p^w_{u,v} = (-1)^{l(u)+l(v)} sum over u <= y, v <= z, theta <= w of (-1)^{l(y)+l(z)} c^theta_{y,z}"""
    _require_full(space, "the c/p relation")
    rs = space.rs
    inner: typing.Dict[int, LaurentPoly] = {}
    for y in space.points:
        if not rs.bruhat_leq(u, y):
            continue
        for z in space.points:
            if not rs.bruhat_leq(v, z):
                continue
            sign = _sign(y.length, z.length)
            for theta, coef in structure_constants(space, y, z, "c").items():
                inner[theta.id] = inner.get(theta.id, LaurentPoly.zero(rs.rank)) + coef * sign
    coeffs = {}
    for w in space.points:
        total = LaurentPoly.zero(rs.rank)
        for tid, c in inner.items():
            if rs.bruhat_leq(rs.elements[tid], w):
                total = total + c
        coeffs[w.id] = total * _sign(u.length, v.length)
    return ExpansionCoeffs(space, coeffs)
