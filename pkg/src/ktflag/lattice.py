"""
exact arithmetic in the representation ring of a torus

weights are integer tuples in the fundamental-weight basis, Laurent polynomials
are finitely supported maps from weights to nonzero integers
"""

import typing
from ktflag.errors import InexactDivisionError, RankMismatchError

Weight = typing.Tuple[int, ...]


def zero_weight(rank: int) -> Weight:
    return (0,) * rank


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wscale(k: int, a: Weight) -> Weight:
    return tuple(k * x for x in a)


def wsum(weights: typing.Iterable[Weight], rank: int) -> Weight:
    total = zero_weight(rank)
    for w in weights:
        total = wadd(total, w)
    return total


# ANCHOR type A coordinates
def chi(n: int, i: int) -> Weight:
    """
    fundamental weight chi_i of SL_{n+1}; chi_0 and chi_{n+1} are the zero weight

    Args:
        n (int): rank
        i (int): index in [0, n+1]

    Returns:
        Weight: the weight in fundamental coordinates
    """
    if i < 0 or i > n + 1:
        raise ValueError(f"chi index {i} out of range for rank {n}")
    coords = [0] * n
    if 1 <= i <= n:
        coords[i - 1] = 1
    return tuple(coords)


def epsilon(n: int, i: int) -> Weight:
    """
    epsilon_i = chi_i - chi_{i-1} for 1 <= i <= n+1

    Example:
        >>> epsilon(2, 1), epsilon(2, 2), epsilon(2, 3)
        ((1, 0), (-1, 1), (0, -1))
    """
    if i < 1 or i > n + 1:
        raise ValueError(f"epsilon index {i} out of range for rank {n}")
    return wsub(chi(n, i), chi(n, i - 1))


def from_epsilon(coeffs: typing.Sequence[int]) -> Weight:
    """
    converts sum_i a_i epsilon_i (a list of n+1 integers) to fundamental coordinates
    """
    n = len(coeffs) - 1
    return wsum((wscale(a, epsilon(n, i + 1)) for i, a in enumerate(coeffs)), n)


# ANCHOR LaurentPoly
class LaurentPoly:
    """
    element of R(T): a finitely supported integer combination of characters e^w

    instances are immutable; zero coefficients are never stored
    """

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, terms: typing.Mapping[Weight, int], rank: int):
        self.rank = rank
        clean = {}
        for w, c in terms.items():
            if c == 0:
                continue
            w = tuple(w)
            if len(w) != rank:
                raise RankMismatchError(f"weight {w} does not have rank {rank}")
            clean[w] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, rank: int) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls._raw({}, rank)

    @classmethod
    def const(cls, c: int, rank: int) -> "LaurentPoly":
        return cls._raw({zero_weight(rank): c} if c else {}, rank)

    @classmethod
    def one(cls, rank: int) -> "LaurentPoly":
        return cls.const(1, rank)

    @classmethod
    def monomial(cls, weight: Weight, coef: int = 1) -> "LaurentPoly":
        weight = tuple(weight)
        return cls._raw({weight: coef} if coef else {}, len(weight))

    # ANCHOR container protocol
    @property
    def terms(self) -> typing.Mapping[Weight, int]:
        return self._terms

    def items(self):
        return self._terms.items()

    def support(self) -> typing.List[Weight]:
        return sorted(self._terms)

    def coefficient(self, weight: Weight) -> int:
        return self._terms.get(tuple(weight), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    # ANCHOR arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise RankMismatchError(f"rank {self.rank} against rank {other.rank}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.rank)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for w, c in other._terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return LaurentPoly._raw(terms, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({w: -c for w, c in self._terms.items()}, self.rank)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.rank)
            return LaurentPoly._raw(
                {w: c * other for w, c in self._terms.items()}, self.rank
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: typing.Dict[Weight, int] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = tuple(x + y for x, y in zip(w1, w2))
                terms[w] = terms.get(w, 0) + c1 * c2
        return LaurentPoly._raw({w: c for w, c in terms.items() if c}, self.rank)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials, use star")
        result = LaurentPoly.one(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.rank)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    # ANCHOR ring maps
    def star(self) -> "LaurentPoly":
        """the involution e^w -> e^{-w}"""
        return LaurentPoly._raw(
            {tuple(-x for x in w): c for w, c in self._terms.items()}, self.rank
        )

    def act(self, fn: typing.Callable[[Weight], Weight]) -> "LaurentPoly":
        """
        applies a lattice automorphism to every exponent

        Args:
            fn: a bijective map on weights (a Weyl group element's action)
        """
        return LaurentPoly._raw({fn(w): c for w, c in self._terms.items()}, self.rank)

    def forgetful(self) -> int:
        """the augmentation e^w -> 1"""
        return sum(self._terms.values())

    def substitute(
        self, fn: typing.Callable[[Weight], Weight], rank: int
    ) -> "LaurentPoly":
        """re-embeds exponents into another lattice of the given rank"""
        terms: typing.Dict[Weight, int] = {}
        for w, c in self._terms.items():
            nw = fn(w)
            terms[nw] = terms.get(nw, 0) + c
        return LaurentPoly({w: c for w, c in terms.items()}, rank)

    # ANCHOR exact division
    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """
        exact quotient self / divisor

        Uses leading-term elimination in lexicographic order. The quotient of an
        exact division has its support inside the coordinate box determined by the
        Newton polytopes of dividend and divisor, so any quotient term outside that
        box means the division is inexact.

        Raises:
            ZeroDivisionError: divisor is zero
            InexactDivisionError: a nonzero remainder is left
        """
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return LaurentPoly.zero(self.rank)

        if divisor.is_monomial():
            (dw, dc), = divisor._terms.items()
            terms = {}
            for w, c in self._terms.items():
                q, r = divmod(c, dc)
                if r:
                    raise InexactDivisionError(self, divisor)
                terms[tuple(x - y for x, y in zip(w, dw))] = q
            return LaurentPoly._raw(terms, self.rank)

        rank = self.rank
        lo = [
            min(w[k] for w in self._terms) - min(w[k] for w in divisor._terms)
            for k in range(rank)
        ]
        hi = [
            max(w[k] for w in self._terms) - max(w[k] for w in divisor._terms)
            for k in range(rank)
        ]
        lead_d = max(divisor._terms)
        lead_c = divisor._terms[lead_d]
        rest = [(w, c) for w, c in divisor._terms.items() if w != lead_d]

        remainder = dict(self._terms)
        quotient: typing.Dict[Weight, int] = {}
        while remainder:
            lead = max(remainder)
            qw = tuple(x - y for x, y in zip(lead, lead_d))
            if any(qw[k] < lo[k] or qw[k] > hi[k] for k in range(rank)):
                raise InexactDivisionError(self, divisor)
            qc, r = divmod(remainder[lead], lead_c)
            if r:
                raise InexactDivisionError(self, divisor)
            quotient[qw] = qc
            del remainder[lead]
            for w, c in rest:
                t = tuple(x + y for x, y in zip(qw, w))
                s = remainder.get(t, 0) - qc * c
                if s:
                    remainder[t] = s
                else:
                    remainder.pop(t, None)
        return LaurentPoly._raw(quotient, rank)

    # ANCHOR serialization
    def to_json(self) -> typing.List[dict]:
        return [{"w": list(w), "c": self._terms[w]} for w in sorted(self._terms)]

    @classmethod
    def from_json(cls, data: typing.List[dict], rank: int) -> "LaurentPoly":
        return cls({tuple(t["w"]): t["c"] for t in data}, rank)

    def render(
        self,
        coords: typing.Callable[[Weight], typing.Sequence[int]] = None,
        var: typing.Union[str, typing.Callable[[int], str]] = "x",
    ) -> str:
        """
        canonical string form, terms in lexicographic order of their exponents

        Args:
            coords: converts a weight into the exponent vector that gets printed
                (defaults to the fundamental coordinates themselves)
            var: variable prefix, variable k is printed as f"{var}{k}"; a callable
                maps k to the variable name instead

        Example:
            >>> LaurentPoly({(1, 0): 2, (0, 0): -1}, 2).render()
            '-1 + 2*x1'
        """
        if not self._terms:
            return "0"
        name = var if callable(var) else (lambda k: f"{var}{k}")
        rows = []
        for w, c in self._terms.items():
            exps = tuple(coords(w)) if coords else w
            rows.append((exps, c))
        rows.sort()
        parts = []
        for exps, c in rows:
            factors = []
            for k, e in enumerate(exps):
                if e == 0:
                    continue
                factors.append(name(k + 1) if e == 1 else f"{name(k + 1)}^{e}")
            if not factors:
                parts.append(str(c))
                continue
            mono = "*".join(factors)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.render()})"


# ANCHOR operations
def lp_arith(
    f: LaurentPoly,
    g: typing.Optional[LaurentPoly],
    kind: typing.Literal["add", "mul", "neg"],
) -> LaurentPoly:
    match kind:
        case "add":
            return f + g
        case "mul":
            return f * g
        case "neg":
            return -f
        case _:
            raise ValueError(f"unknown operation {kind}")


def lp_star(f: LaurentPoly) -> LaurentPoly:
    return f.star()


def weyl_act(w, f: LaurentPoly) -> LaurentPoly:
    """
    Args:
        w: a WeylElem (anything with an ``apply(weight)`` method)
        f: the polynomial acted on
    """
    return f.act(w.apply)


def forgetful(f: LaurentPoly) -> int:
    return f.forgetful()


def exp_weight(weight: Weight) -> LaurentPoly:
    """e^weight"""
    return LaurentPoly.monomial(weight)


def one_minus_exp(weight: Weight) -> LaurentPoly:
    """1 - e^weight"""
    rank = len(weight)
    if not any(weight):
        return LaurentPoly.zero(rank)
    return LaurentPoly._raw({zero_weight(rank): 1, tuple(weight): -1}, rank)


def product(factors: typing.Iterable[LaurentPoly], rank: int) -> LaurentPoly:
    result = LaurentPoly.one(rank)
    for f in factors:
        result = result * f
    return result
