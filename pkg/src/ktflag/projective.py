"""
structure constants of K_T(P^n) from closed formulas and recurrences

P^n is realized as SL_{n+1}/P with P generated by the simple indices 2..n; the
fixed point k in [0, n] is the coset of s_k s_{k-1} ... s_1, i.e. the line of the
(k+1)-th coordinate.

Every formula takes an optional weight list mu = (mu_1, ..., mu_{n+1}) that replaces
(epsilon_1, ..., epsilon_{n+1}); the recurrences shift it to (mu_2, ...). A tilde
marks the sign-normalized constant, e.g. p~ = (-1)^{u+v+w} p.
"""

from dataclasses import dataclass
from functools import cache
import logging
import typing

from ktflag.errors import IndexRangeError
from ktflag.gkm import (
    FlagSpace,
    GKMClass,
    euler_char,
    flag_space,
    line_bundle_class,
    schubert_class,
    structure_constants,
    xi_class,
)
from ktflag.lattice import LaurentPoly, Weight, epsilon, exp_weight, wneg, wsub, wsum
from ktflag.roots import WeylElem, build_root_system, render_in_roots

logger = logging.getLogger(__name__)

Weights = typing.Tuple[Weight, ...]
Family = typing.Literal["p", "b", "r", "q"]
Form = typing.Literal["closed", "recur"]


@dataclass(frozen=True)
class PnIndex:
    n: int
    u: int
    v: int
    w: int

    def __post_init__(self):
        if self.n < 1:
            raise IndexRangeError(f"P^n needs n >= 1, got {self.n}")
        for name in ("u", "v", "w"):
            k = getattr(self, name)
            if not 0 <= k <= self.n:
                raise IndexRangeError(f"{name}={k} outside [0, {self.n}]")

    @property
    def sign(self) -> int:
        return -1 if (self.u + self.v + self.w) % 2 else 1

    def bar(self) -> "PnIndex":
        """(n-u, n-v, n-w)"""
        return PnIndex(self.n, self.n - self.u, self.n - self.v, self.n - self.w)


def all_indices(n: int) -> typing.List[PnIndex]:
    return [PnIndex(n, u, v, w) for u in range(n + 1) for v in range(n + 1) for w in range(n + 1)]


# ANCHOR truncated series
class TruncatedSeries:
    """
    power series in an auxiliary variable t with Laurent polynomial coefficients,
    exact up to t^order
    """

    def __init__(self, coeffs: typing.Sequence[LaurentPoly], order: int, rank: int):
        self.order = order
        self.rank = rank
        coeffs = list(coeffs[: order + 1])
        coeffs += [LaurentPoly.zero(rank)] * (order + 1 - len(coeffs))
        self.coeffs = coeffs

    @classmethod
    def one(cls, order: int, rank: int) -> "TruncatedSeries":
        return cls([LaurentPoly.one(rank)], order, rank)

    def coeff(self, p: int) -> LaurentPoly:
        if p < 0 or p > self.order:
            raise IndexRangeError(f"degree {p} outside truncation order {self.order}")
        return self.coeffs[p]

    def mul_linear(self, weight: Weight) -> "TruncatedSeries":
        """multiplies by (1 - t e^weight)"""
        e = exp_weight(weight)
        out = [self.coeffs[0]]
        for k in range(1, self.order + 1):
            out.append(self.coeffs[k] - e * self.coeffs[k - 1])
        return TruncatedSeries(out, self.order, self.rank)

    def div_linear(self, weight: Weight) -> "TruncatedSeries":
        """divides by (1 - t e^weight), expanded at t = 0"""
        e = exp_weight(weight)
        out = [self.coeffs[0]]
        for k in range(1, self.order + 1):
            out.append(self.coeffs[k] + e * out[k - 1])
        return TruncatedSeries(out, self.order, self.rank)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        out = []
        for k in range(order + 1):
            acc = LaurentPoly.zero(self.rank)
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return TruncatedSeries(out, order, self.rank)

    def inverse(self) -> "TruncatedSeries":
        """
        Raises:
            ValueError: the constant term is not a unit of R(T)
        """
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise ValueError("only series with a unit constant term are invertible")
        inv0 = LaurentPoly.one(self.rank).exact_div(c0)
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = LaurentPoly.zero(self.rank)
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(acc * inv0))
        return TruncatedSeries(out, self.order, self.rank)


def series_coeff(
    numerator_roots: typing.Sequence[Weight],
    denominator_roots: typing.Sequence[Weight],
    p: int,
    rank: int,
) -> LaurentPoly:
    """
    coefficient of t^p in prod(1 - t e^lambda) / prod(1 - t e^mu)

    Example:
        >>> series_coeff([], [(1,)], 1, 1).render()
        'x1'
    """
    if p < 0:
        return LaurentPoly.zero(rank)
    s = TruncatedSeries.one(p, rank)
    for lam in numerator_roots:
        s = s.mul_linear(lam)
    for mu in denominator_roots:
        s = s.div_linear(mu)
    return s.coeff(p)


# ANCHOR weights
def default_weights(n: int) -> Weights:
    return tuple(epsilon(n, i) for i in range(1, n + 2))


def _chi(mu: Weights, k: int) -> Weight:
    """mu_1 + ... + mu_k"""
    return wsum(mu[:k], len(mu[0]))


def _bracket(mu: Weights, u: int, v: int, w: int, degree: int) -> LaurentPoly:
    """[prod_{i<=u}(1-t e^mu_i) prod_{i<=v}(1-t e^mu_i) / prod_{i<=w+1}(1-t e^mu_i)]_degree"""
    rank = len(mu[0])
    if degree < 0:
        return LaurentPoly.zero(rank)
    # common factors cancel, which keeps the series short
    num = list(mu[:u]) + list(mu[:v])
    den = list(mu[: w + 1])
    for weight in list(den):
        if weight in num:
            num.remove(weight)
            den.remove(weight)
    return series_coeff(num, den, degree, rank)


def _resolve(idx: PnIndex, weights: typing.Optional[typing.Sequence[Weight]]) -> Weights:
    if weights is None:
        return default_weights(idx.n)
    weights = tuple(tuple(x) for x in weights)
    if len(weights) < idx.n + 1:
        raise IndexRangeError(f"need {idx.n + 1} weights, got {len(weights)}")
    return weights


# ANCHOR dual structure sheaf basis
def p_tilde_closed(u: int, v: int, w: int, mu: Weights) -> LaurentPoly:
    rank = len(mu[0])
    if min(u, v, w) < 0 or u > w or v > w:
        return LaurentPoly.zero(rank)
    exponent = wsub(wsub(_chi(mu, w + 1), _chi(mu, u + 1)), _chi(mu, v + 1))
    return exp_weight(exponent) * _bracket(mu, u, v, w, u + v - w + 1)


@cache
def p_tilde_recur(u: int, v: int, w: int, mu: Weights) -> LaurentPoly:
    rank = len(mu[0])
    if min(u, v, w) < 0 or u > w or v > w:
        return LaurentPoly.zero(rank)
    if v == 0:
        if u in (w, w - 1):
            return exp_weight(wsub(mu[w], mu[0]))
        return LaurentPoly.zero(rank)
    shifted = mu[1:]
    total = LaurentPoly.zero(rank)
    first = p_tilde_recur(u - 1, v - 1, w - 1, shifted)
    if first:
        total = total + (exp_weight(wsub(mu[u], mu[0])) - 1) * first
    second = p_tilde_recur(u, v - 1, w - 1, shifted)
    if second:
        total = total + exp_weight(wsub(mu[u + 1], mu[0])) * second
    return total


def pn_p_closed(idx: PnIndex, weights: typing.Optional[typing.Sequence[Weight]] = None) -> LaurentPoly:
    """p^w_{u,v} of P^n from the closed product formula"""
    return p_tilde_closed(idx.u, idx.v, idx.w, _resolve(idx, weights)) * idx.sign


def pn_p_recur(idx: PnIndex, weights: typing.Optional[typing.Sequence[Weight]] = None) -> LaurentPoly:
    """p^w_{u,v} of P^n from the recurrence in v"""
    return p_tilde_recur(idx.u, idx.v, idx.w, _resolve(idx, weights)) * idx.sign


# ANCHOR structure sheaf basis
def r_tilde_closed(u: int, v: int, w: int, mu: Weights) -> LaurentPoly:
    rank = len(mu[0])
    if min(u, v, w) < 0 or u > w or v > w:
        return LaurentPoly.zero(rank)
    exponent = wsub(wsub(_chi(mu, w), _chi(mu, u)), _chi(mu, v))
    return exp_weight(exponent) * _bracket(mu, u, v, w, u + v - w)


@cache
def r_tilde_recur(u: int, v: int, w: int, mu: Weights) -> LaurentPoly:
    rank = len(mu[0])
    if min(u, v, w) < 0 or u > w or v > w:
        return LaurentPoly.zero(rank)
    if v == 0:
        return LaurentPoly.one(rank) if u == w else LaurentPoly.zero(rank)
    shifted = mu[1:]
    total = LaurentPoly.zero(rank)
    first = r_tilde_recur(u - 1, v - 1, w - 1, shifted)
    if first:
        total = total + (exp_weight(wsub(mu[u], mu[0])) - 1) * first
    second = r_tilde_recur(u, v - 1, w - 1, shifted)
    if second:
        total = total + exp_weight(wsub(mu[u], mu[0])) * second
    return total


def pn_r_closed(idx: PnIndex, weights: typing.Optional[typing.Sequence[Weight]] = None) -> LaurentPoly:
    return r_tilde_closed(idx.u, idx.v, idx.w, _resolve(idx, weights)) * idx.sign


def pn_r_recur(idx: PnIndex, weights: typing.Optional[typing.Sequence[Weight]] = None) -> LaurentPoly:
    return r_tilde_recur(idx.u, idx.v, idx.w, _resolve(idx, weights)) * idx.sign


def longest_type_a(n: int, weight: Weight) -> Weight:
    """w_o of SL_{n+1} in fundamental coordinates: omega_i -> -omega_{n+1-i}"""
    return tuple(-x for x in reversed(weight))


def pn_b(idx: PnIndex, form: Form = "closed") -> LaurentPoly:
    """b^w_{u,v} = w_o(r^{n-w}_{n-u,n-v})"""
    r = pn_r_closed(idx.bar()) if form == "closed" else pn_r_recur(idx.bar())
    return r.act(lambda weight: longest_type_a(idx.n, weight))


# ANCHOR Euler characteristics of Richardson varieties against xi
def q_tilde_closed(u: int, v: int, w: int, mu: Weights) -> LaurentPoly:
    rank = len(mu[0])
    if min(u, v, w) < 0 or u > w or v > w:
        return LaurentPoly.zero(rank)
    exponent = wsub(wsub(_chi(mu, w + 1), _chi(mu, u)), _chi(mu, v + 1))
    return exp_weight(exponent) * _bracket(mu, u, v, w, u + v - w)


@cache
def q_tilde_recur(u: int, v: int, w: int, mu: Weights) -> LaurentPoly:
    rank = len(mu[0])
    if min(u, v, w) < 0 or u > w or v > w:
        return LaurentPoly.zero(rank)
    if v == 0:
        return exp_weight(wsub(mu[w], mu[0])) if u == w else LaurentPoly.zero(rank)
    shifted = mu[1:]
    total = LaurentPoly.zero(rank)
    first = q_tilde_recur(u - 1, v - 1, w - 1, shifted)
    if first:
        total = total + (exp_weight(wsub(mu[u], mu[0])) - 1) * first
    second = q_tilde_recur(u, v - 1, w - 1, shifted)
    if second:
        total = total + exp_weight(wsub(mu[u], mu[0])) * second
    return total


def pn_q_closed(idx: PnIndex, weights: typing.Optional[typing.Sequence[Weight]] = None) -> LaurentPoly:
    """chi(X_w cap X^u, xi^v), signed, from the closed formula"""
    return q_tilde_closed(idx.u, idx.v, idx.w, _resolve(idx, weights)) * idx.sign


def pn_q_recur(idx: PnIndex, weights: typing.Optional[typing.Sequence[Weight]] = None) -> LaurentPoly:
    return q_tilde_recur(idx.u, idx.v, idx.w, _resolve(idx, weights)) * idx.sign


# ANCHOR GKM model of P^n
def pn_space(n: int) -> FlagSpace:
    return flag_space(build_root_system(f"A{n}"), frozenset(range(2, n + 1)))


def pn_point(n: int, k: int) -> WeylElem:
    """the fixed point k, i.e. s_k ... s_1"""
    if not 0 <= k <= n:
        raise IndexRangeError(f"point {k} outside [0, {n}]")
    return build_root_system(f"A{n}").element(range(k, 0, -1))


def pn_q(idx: PnIndex) -> LaurentPoly:
    """chi(X_w cap X^u, xi^v) computed by localization"""
    space = pn_space(idx.n)
    pt = lambda k: pn_point(idx.n, k)  # noqa: E731
    cls = (
        schubert_class(space, pt(idx.w), "ordinary")
        * schubert_class(space, pt(idx.u), "opposite")
        * xi_class(space, pt(idx.v))
    )
    return euler_char(cls)


def pn_p_gkm(idx: PnIndex) -> LaurentPoly:
    space = pn_space(idx.n)
    pt = lambda k: pn_point(idx.n, k)  # noqa: E731
    return structure_constants(space, pt(idx.u), pt(idx.v), "p")[pt(idx.w)]


def pn_b_gkm(idx: PnIndex) -> LaurentPoly:
    space = pn_space(idx.n)
    pt = lambda k: pn_point(idx.n, k)  # noqa: E731
    return structure_constants(space, pt(idx.u), pt(idx.v), "b")[pt(idx.w)]


def hyperplane_class(n: int, i: int) -> GKMClass:
    """[O_{Y_i}] = 1 - e^{-epsilon_i}[L(-epsilon_1)] for the hyperplane x_i = 0"""
    space = pn_space(n)
    taut = line_bundle_class(space, wneg(epsilon(n, 1)))
    return space.one() - taut * exp_weight(wneg(epsilon(n, i)))


def pn_xi_linebundle(v: int, n: int) -> GKMClass:
    """xi^v as a polynomial in [L(-epsilon_1)]"""
    if not 0 <= v <= n:
        raise IndexRangeError(f"v={v} outside [0, {n}]")
    space = pn_space(n)
    result = space.one()
    for i in range(1, v + 1):
        result = result * hyperplane_class(n, i)
    if v == n:
        return result
    taut = line_bundle_class(space, wneg(epsilon(n, 1)))
    return result * taut * exp_weight(wneg(epsilon(n, v + 1)))


# ANCHOR dispatch
def pn_constant(idx: PnIndex, family: Family, form: Form = "closed") -> LaurentPoly:
    match family, form:
        case "p", "closed":
            return pn_p_closed(idx)
        case "p", "recur":
            return pn_p_recur(idx)
        case "r", "closed":
            return pn_r_closed(idx)
        case "r", "recur":
            return pn_r_recur(idx)
        case "b", _:
            return pn_b(idx, form)
        case "q", "closed":
            return pn_q_closed(idx)
        case "q", "recur":
            return pn_q_recur(idx)
    raise ValueError(f"unknown family/form {family}/{form}")


def render_epsilon(n: int, f: LaurentPoly) -> str:
    """
    renders f in y_{ij} = e^{epsilon_i - epsilon_j}, written as a product of the
    adjacent ones y_{k,k+1} (printed y12, y23, ...)
    """
    rs = build_root_system(f"A{n}")
    if all(rs.in_root_lattice(w) for w in f.terms):
        return f.render(lambda w: [int(c) for c in rs.root_coords(w)], var=lambda k: f"y{k}{k + 1}")
    return render_in_roots(rs, f)
