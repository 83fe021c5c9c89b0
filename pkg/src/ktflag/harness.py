"""
verification suites and structure-constant tables

Each suite splits its instances into independent tasks (one per u, v or n), runs
them inline or on a process pool, and folds the per-instance outcomes into a
SuiteReport ordered by reduced words.
"""

from concurrent.futures import ProcessPoolExecutor
import csv
import io
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
import logging
import os
import time
import typing

from ktflag.config import HarnessConfig, TableConfig
from ktflag.ext_hashlib import write_digest
from ktflag.ext_json import write_json
from ktflag.gkm import (
    euler_char,
    expand,
    flag_space,
    line_bundle_class,
    opposite_in_ordinary,
    richardson_class,
    schubert_class,
    structure_constants,
    translation_coeffs,
    translation_recursion,
    xi_class,
)
from ktflag.lattice import LaurentPoly, exp_weight, wneg
from ktflag.positivity import certify, in_monoid, ring_membership
from ktflag.projective import (
    PnIndex,
    all_indices,
    pn_b,
    pn_constant,
    pn_p_closed,
    pn_p_recur,
    pn_q_closed,
    pn_q_recur,
    pn_r_closed,
    pn_r_recur,
    render_epsilon,
)
from ktflag.roots import WeylElem, build_root_system, render_in_roots

logger = logging.getLogger(__name__)

Status = typing.Literal["pass", "fail", "unknown"]
Key = typing.Tuple[str, ...]

SUITES = ("gk", "gr", "translation", "richardson", "psum", "pn", "shadows")


# ANCHOR reports
@dataclass
class InstanceResult:
    key: Key
    order: tuple
    status: Status = "pass"
    problems: typing.List[dict] = field(default_factory=list)


@dataclass
class SuiteReport:
    name: str
    instances: int = 0
    passed: int = 0
    failed: int = 0
    unknown: int = 0
    failures: typing.List[dict] = field(default_factory=list)
    wall_time: float = 0.0
    fail_on_unknown: bool = True

    @property
    def ok(self) -> bool:
        return self.failed == 0 and (self.unknown == 0 or not self.fail_on_unknown)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "instances": self.instances,
            "pass": self.passed,
            "fail": self.failed,
            "unknown": self.unknown,
            "failures": self.failures,
            "wall_time": round(self.wall_time, 3),
        }

    def summary(self) -> str:
        return (
            f"{self.name}: {self.instances} instances, {self.passed} pass, "
            f"{self.failed} fail, {self.unknown} unknown ({self.wall_time:.2f}s)"
        )


class _Checks:
    """collects the checks of one instance"""

    def __init__(self, rs, cap: int, key: Key, order: tuple):
        self.rs = rs
        self.cap = cap
        self.result = InstanceResult(key, order)

    def _record(self, status: Status, check: str, value: typing.Optional[LaurentPoly] = None, certificate=None):
        if status == "pass":
            return
        if self.result.status != "fail":
            self.result.status = status
        problem = {"check": check, "status": status}
        if value is not None:
            problem["value"] = render_in_roots(self.rs, value)
            problem["poly"] = value.to_json()
        if certificate is not None:
            problem["certificate"] = certificate.to_json()
        self.result.problems.append(problem)

    def cone(self, check: str, f: LaurentPoly, sign: str):
        status, result = certify(f, sign, self.rs, self.cap)
        self._record(status, check, f, result)

    def holds(self, check: str, condition: bool, value: typing.Optional[LaurentPoly] = None):
        self._record("pass" if condition else "fail", check, value)

    def equal(self, check: str, a: LaurentPoly, b: LaurentPoly):
        self.holds(check, a == b, a - b)


def _sgn(*lengths: int) -> int:
    return -1 if sum(lengths) % 2 else 1


def _order(*elems: WeylElem) -> tuple:
    return tuple((w.length, w.word) for w in elems)


def _skip(only: typing.Optional[Key], key: Key) -> bool:
    return only is not None and tuple(only) != key


def _subset_label(S) -> str:
    return "S" + "".join(str(i) for i in sorted(S))


def _repro(suite: str, key: Key, type_tag: str = None, parabolic=(), n_max: int = None) -> str:
    parts = ["ktflag", "verify", suite]
    if type_tag:
        parts += ["--type", type_tag]
    if parabolic:
        parts += ["--parabolic", ",".join(str(i) for i in sorted(parabolic))]
    if n_max is not None:
        parts += ["--n", str(n_max)]
    parts += ["--instance", ",".join(key)]
    return " ".join(parts)


def _run_suite(
    name: str,
    tasks: typing.Sequence[typing.Callable[[], typing.List[InstanceResult]]],
    config: HarnessConfig,
    repro: typing.Callable[[Key], str],
) -> SuiteReport:
    start = time.perf_counter()
    if config.jobs <= 1 or len(tasks) <= 1:
        chunks = [task() for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(task) for task in tasks]
            chunks = [f.result() for f in futures]

    results = sorted((r for chunk in chunks for r in chunk), key=lambda r: r.order)
    report = SuiteReport(name, fail_on_unknown=config.fail_on_unknown)
    for r in results:
        report.instances += 1
        match r.status:
            case "pass":
                report.passed += 1
                continue
            case "fail":
                report.failed += 1
            case "unknown":
                report.unknown += 1
        record = {
            "instance": list(r.key),
            "status": r.status,
            "problems": r.problems,
            "repro": repro(r.key),
        }
        report.failures.append(record)
        logger.warning(
            "%s %s %s: %s (reproduce: %s)",
            name,
            r.status,
            ",".join(r.key),
            "; ".join(f"{p['check']} = {p.get('value', '-')}" for p in r.problems),
            record["repro"],
        )
    report.wall_time = time.perf_counter() - start
    logger.info(report.summary())
    return report


# ANCHOR Graham-Kumar conjecture
def _gk_task(type_tag: str, S: tuple, u_id: int, cap: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(type_tag)
    space = flag_space(rs, frozenset(S))
    u = rs.elements[u_id]
    out = []
    for v in space.points:
        keys = [(str(u), str(v), str(w)) for w in space.points]
        if all(_skip(only, k) for k in keys):
            continue
        consts = structure_constants(space, u, v, "p")
        for w, key in zip(space.points, keys):
            if _skip(only, key):
                continue
            chk = _Checks(rs, cap, key, _order(u, v, w))
            p = consts[w]
            chk.holds("p in Z[e^-beta]", ring_membership(p, "negative_roots", rs), p)
            chk.cone("sign-twisted p", p * _sgn(u.length, v.length, w.length), "negative_roots")
            out.append(chk.result)
    return out


def verify_gk(
    type_tag: str,
    parabolic: typing.Iterable[int] = (),
    config: HarnessConfig = None,
    only: typing.Optional[Key] = None,
) -> SuiteReport:
    """
    (-1)^{l(u)+l(v)+l(w)} p^w_{u,v}(P) in Z_+[e^{-beta} - 1] for all u, v, w in W^P
    """
    config = config or HarnessConfig()
    S = tuple(sorted(parabolic))
    space = flag_space(build_root_system(type_tag), frozenset(S))
    tasks = [partial(_gk_task, type_tag, S, u.id, config.cap, only) for u in space.points]
    return _run_suite(
        f"gk {type_tag} S={list(S)}", tasks, config, lambda k: _repro("gk", k, type_tag, S)
    )


# ANCHOR Griffeth-Ram conjecture
def _gr_task(type_tag: str, S: tuple, u_id: int, cap: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(type_tag)
    space = flag_space(rs, frozenset(S))
    full = flag_space(rs)
    dim = space.dimension
    u = rs.elements[u_id]
    out = []
    for v in space.points:
        keys = [(str(u), str(v), str(w)) for w in space.points]
        if all(_skip(only, k) for k in keys):
            continue
        c_consts = structure_constants(space, u, v, "c")
        b_consts = structure_constants(space, u, v, "b")
        c_full = structure_constants(full, u, v, "c") if S else None
        d_consts = structure_constants(space, u, v, "d") if not S else None
        for w, key in zip(space.points, keys):
            if _skip(only, key):
                continue
            chk = _Checks(rs, cap, key, _order(u, v, w))
            sign = _sgn(u.length, v.length, w.length)
            c = c_consts[w]
            b = b_consts[w]
            chk.holds("c in Z[e^-beta]", ring_membership(c, "negative_roots", rs), c)
            chk.cone("sign-twisted c", c * sign, "negative_roots")
            chk.cone("sign-twisted b", b * (sign * _sgn(dim)), "positive_roots")
            if c_full is not None:
                chk.equal("c(P) - c(B)", c, c_full[w])
            if d_consts is not None:
                d = d_consts[w]
                chk.equal("d - sign * star(c)", d, c.star() * sign)
                chk.cone("d", d, "positive_roots")
            out.append(chk.result)
    return out


def verify_gr(
    type_tag: str,
    parabolic: typing.Iterable[int] = (),
    config: HarnessConfig = None,
    only: typing.Optional[Key] = None,
) -> SuiteReport:
    """
    sign-twisted c in Z_+[e^{-beta} - 1] and the b-form in Z_+[e^{beta} - 1]; on G/P
    also c(P) = c(B), on G/B also d = (-1)^{l(u)+l(v)+l(w)} star(c) in Z_+[e^beta - 1]
    """
    config = config or HarnessConfig()
    S = tuple(sorted(parabolic))
    space = flag_space(build_root_system(type_tag), frozenset(S))
    tasks = [partial(_gr_task, type_tag, S, u.id, config.cap, only) for u in space.points]
    return _run_suite(
        f"gr {type_tag} S={list(S)}", tasks, config, lambda k: _repro("gr", k, type_tag, S)
    )


# ANCHOR translated Schubert varieties
def _translation_task(type_tag: str, S: tuple, v_id: int, cap: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(type_tag)
    space = flag_space(rs, frozenset(S))
    v = rs.elements[v_id]
    out = []
    for w in space.points:
        key = ("f", str(v), str(w))
        if _skip(only, key):
            continue
        chk = _Checks(rs, cap, key, (0,) + _order(v, w))
        coeffs = translation_coeffs(space, v, w)
        for u, f in coeffs.items():
            chk.cone(f"f at {u}", f * _sgn(w.length, u.length), "negative_roots")
        if space.is_full:
            chk.holds("translation recursion", translation_recursion(space, v, w) == coeffs)
        out.append(chk.result)
    return out


def _opposite_task(type_tag: str, S: tuple, cap: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(type_tag)
    space = flag_space(rs, frozenset(S))
    dim = space.dimension
    out = []
    for w in space.points:
        key = ("e", str(w))
        if _skip(only, key):
            continue
        chk = _Checks(rs, cap, key, (1,) + _order(w))
        for u, e in opposite_in_ordinary(space, w).items():
            chk.cone(f"e at {u}", e * _sgn(w.length, dim, u.length), "negative_roots")
        out.append(chk.result)
    return out


def verify_translation(
    type_tag: str,
    parabolic: typing.Iterable[int] = (),
    config: HarnessConfig = None,
    only: typing.Optional[Key] = None,
) -> SuiteReport:
    """
    (-1)^{codim X_w + codim X_u} f^v_{w,u} and (-1)^{codim X^w + codim X_u} e_{w,u}
    in Z_+[e^{-beta} - 1]; instances are keyed ("f", v, w) and ("e", w)
    """
    config = config or HarnessConfig()
    S = tuple(sorted(parabolic))
    rs = build_root_system(type_tag)
    tasks = [partial(_translation_task, type_tag, S, v.id, config.cap, only) for v in rs.elements]
    tasks.append(partial(_opposite_task, type_tag, S, config.cap, only))
    return _run_suite(
        f"translation {type_tag} S={list(S)}",
        tasks,
        config,
        lambda k: _repro("translation", k, type_tag, S),
    )


# ANCHOR Richardson varieties
def _richardson_task(type_tag: str, v_id: int, cap: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(type_tag)
    space = flag_space(rs)
    v = rs.elements[v_id]
    out = []
    for w in space.points:
        key = (str(v), str(w))
        if not rs.bruhat_leq(v, w) or _skip(only, key):
            continue
        chk = _Checks(rs, cap, key, _order(v, w))
        coeffs = expand(richardson_class(space, v, w), "ordinary_O")
        for u, a in coeffs.items():
            chk.cone(f"a at {u}", a * _sgn(v.length, w.length, u.length), "negative_roots")
        out.append(chk.result)
    return out


def verify_richardson_sl3(config: HarnessConfig = None, only: typing.Optional[Key] = None) -> SuiteReport:
    """
    every nonempty X_w cap X^v of SL_3/B: (-1)^{codim Y + codim X_u} a^Y_u in
    Z_+[e^{-beta} - 1], with codim Y = l(v) + dim G/B - l(w)
    """
    config = config or HarnessConfig()
    rs = build_root_system("A2")
    tasks = [partial(_richardson_task, "A2", v.id, config.cap, only) for v in rs.elements]
    return _run_suite("richardson A2", tasks, config, lambda k: _repro("richardson", k, "A2"))


# ANCHOR sums over parabolic subgroups
def _psum_task(type_tag: str, u_id: int, cap: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(type_tag)
    space = flag_space(rs)
    u = rs.elements[u_id]
    subsets = [frozenset(c) for k in range(rs.rank + 1) for c in combinations(sorted(rs.simple_indices), k)]
    out = []
    consts = None
    for w in space.points:
        for S in subsets:
            key = (str(u), str(w), _subset_label(S))
            if _skip(only, key):
                continue
            if consts is None:
                consts = {v.id: structure_constants(space, u, v, "p") for v in space.points}
            chk = _Checks(rs, cap, key, _order(u, w) + (len(S), tuple(sorted(S))))
            sign = _sgn(w.length, u.length)
            total = LaurentPoly.zero(rs.rank)
            for v in rs.parabolic_subgroup(S):
                total = total + consts[v.id][w]
            chk.holds("signed W_S-sum in Z_+ e^{-Q+}", in_monoid(total * sign, "negative_roots", rs), total)

            rho_S = rs.rho_S(S)
            twisted = schubert_class(space, w, "ordinary") * xi_class(space, u) * line_bundle_class(space, wneg(rho_S))
            chk.equal("W_S-sum - e^{-rho_S} chi(X_w, xi^u L(-rho_S))", total, exp_weight(wneg(rho_S)) * euler_char(twisted))

            if not S:
                chk.cone("p at e", consts[rs.identity.id][w] * sign, "negative_roots")
                for i in sorted(rs.simple_indices):
                    chk.cone(f"p at s{i}", consts[rs.s(i).id][w] * (-sign), "negative_roots")
            out.append(chk.result)
    return out


def verify_psum(type_tag: str, config: HarnessConfig = None, only: typing.Optional[Key] = None) -> SuiteReport:
    """
    for all u, w in W and every S: (-1)^{l(w)+l(u)} sum_{v in W_S} p^w_{u,v} is a
    Z_+-combination of e^{-beta} and equals the Euler characteristic side; for S
    empty also the e and s_i columns
    """
    config = config or HarnessConfig()
    rs = build_root_system(type_tag)
    tasks = [partial(_psum_task, type_tag, u.id, config.cap, only) for u in rs.elements]
    return _run_suite(f"psum {type_tag}", tasks, config, lambda k: _repro("psum", k, type_tag))


# ANCHOR projective spaces
def _expected_forgetful(idx: PnIndex) -> int:
    if idx.v == idx.w - idx.u:
        return 1
    if idx.v == idx.w - idx.u - 1:
        return -1
    return 0


def _pn_task(n: int, cap: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(f"A{n}")
    out = []
    for idx in all_indices(n):
        u, v, w = idx.u, idx.v, idx.w
        key = (str(n), str(u), str(v), str(w))
        if _skip(only, key):
            continue
        chk = _Checks(rs, cap, key, (n, u, v, w))
        p, r, q = pn_p_closed(idx), pn_r_closed(idx), pn_q_closed(idx)
        chk.equal("p closed - recurrence", p, pn_p_recur(idx))
        chk.equal("r closed - recurrence", r, pn_r_recur(idx))
        chk.equal("q closed - recurrence", q, pn_q_recur(idx))
        chk.equal("p - p(swapped)", p, pn_p_closed(PnIndex(n, v, u, w)))
        chk.cone("p~", p * idx.sign, "negative_roots")
        chk.cone("r~", r * idx.sign, "negative_roots")
        chk.cone("q~", q * idx.sign, "negative_roots")
        b = pn_b(idx)
        chk.equal("b closed - recurrence", b, pn_b(idx, "recur"))
        chk.cone("b sign form", b * (idx.sign * _sgn(n)), "positive_roots")
        if p:
            chk.holds("p support bound", u <= w and v <= w and w <= u + v + 1, p)
        if r:
            chk.holds("r support bound", u <= w and v <= w and w <= u + v, r)
        chk.holds("F(p)", p.forgetful() == _expected_forgetful(idx), p)
        out.append(chk.result)
    return out


def verify_pn(n_max: int = 4, config: HarnessConfig = None, only: typing.Optional[Key] = None) -> SuiteReport:
    """
    P^n for n <= n_max: closed forms against recurrences, the cone memberships of p~,
    r~, q~ and the b sign form, support bounds and the non-equivariant values
    """
    config = config or HarnessConfig()
    if not 1 <= n_max <= 6:
        raise ValueError(f"n must lie in [1, 6], got {n_max}")
    tasks = [partial(_pn_task, n, config.cap, only) for n in range(1, n_max + 1)]
    return _run_suite(f"pn n<={n_max}", tasks, config, lambda k: _repro("pn", k, n_max=n_max))


# ANCHOR non-equivariant shadows
def _shadows_task(type_tag: str, S: tuple, u_id: int, only: typing.Optional[Key]) -> typing.List[InstanceResult]:
    rs = build_root_system(type_tag)
    space = flag_space(rs, frozenset(S))
    u = rs.elements[u_id]
    out = []
    for v in space.points:
        consts = structure_constants(space, u, v, "p")
        for w in space.points:
            key = (str(u), str(v), str(w))
            if _skip(only, key):
                continue
            chk = _Checks(rs, 0, key, _order(u, v, w))
            p = consts[w]
            chk.holds("signed F(p) >= 0", _sgn(u.length, v.length, w.length) * p.forgetful() >= 0, p)
            out.append(chk.result)
    return out


def verify_shadows(
    type_tag: str,
    parabolic: typing.Iterable[int] = (),
    config: HarnessConfig = None,
    only: typing.Optional[Key] = None,
) -> SuiteReport:
    """(-1)^{l(u)+l(v)+l(w)} F(p^w_{u,v}(P)) >= 0"""
    config = config or HarnessConfig()
    S = tuple(sorted(parabolic))
    space = flag_space(build_root_system(type_tag), frozenset(S))
    tasks = [partial(_shadows_task, type_tag, S, u.id, only) for u in space.points]
    return _run_suite(
        f"shadows {type_tag} S={list(S)}", tasks, config, lambda k: _repro("shadows", k, type_tag, S)
    )


def run_suite(
    kind: str,
    type_tag: str = "A2",
    parabolic: typing.Iterable[int] = (),
    config: HarnessConfig = None,
    n_max: int = 4,
    only: typing.Optional[Key] = None,
) -> SuiteReport:
    match kind:
        case "gk":
            return verify_gk(type_tag, parabolic, config, only)
        case "gr":
            return verify_gr(type_tag, parabolic, config, only)
        case "translation":
            return verify_translation(type_tag, parabolic, config, only)
        case "richardson":
            return verify_richardson_sl3(config, only)
        case "psum":
            return verify_psum(type_tag, config, only)
        case "pn":
            return verify_pn(n_max, config, only)
        case "shadows":
            return verify_shadows(type_tag, parabolic, config, only)
    raise ValueError(f"unknown suite {kind!r}, expected one of {SUITES}")


# ANCHOR tables
def _flag_rows(cfg: TableConfig) -> typing.List[dict]:
    rs = build_root_system(cfg.type)
    space = flag_space(rs, frozenset(cfg.parabolic))
    rows = []
    for u in space.points:
        for v in space.points:
            consts = structure_constants(space, u, v, cfg.family)
            for w in space.points:
                c = consts[w]
                rows.append(
                    {
                        "type": cfg.type,
                        "u": str(u),
                        "v": str(v),
                        "w": str(w),
                        "coefficient": render_in_roots(rs, c),
                        "coef": c.to_json(),
                    }
                )
    return rows


def _pn_rows(cfg: TableConfig) -> typing.List[dict]:
    rows = []
    for idx in all_indices(cfg.n):
        c = pn_constant(idx, cfg.family, cfg.form)
        rows.append(
            {
                "n": idx.n,
                "u": idx.u,
                "v": idx.v,
                "w": idx.w,
                "coefficient": render_epsilon(idx.n, c),
                "coef": c.to_json(),
            }
        )
    return rows


def emit_tables(cfg: TableConfig) -> typing.List[str]:
    """
    writes the table and its .sha256 digest; identical configuration gives
    identical bytes

    Returns:
        the paths written
    """
    rows = _pn_rows(cfg) if cfg.n is not None else _flag_rows(cfg)
    folder = os.path.dirname(os.path.abspath(cfg.out))
    os.makedirs(folder, exist_ok=True)

    match cfg.format:
        case "csv":
            columns = ["n", "u", "v", "w", "coefficient"] if cfg.n is not None else ["type", "u", "v", "w", "coefficient"]
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            data = buf.getvalue().encode()
            with open(cfg.out, "wb") as f:
                f.write(data)
        case "json":
            meta = {
                "family": cfg.family,
                "type": cfg.type if cfg.n is None else f"A{cfg.n}",
                "parabolic": list(cfg.parabolic) if cfg.n is None else list(range(2, cfg.n + 1)),
                "form": cfg.form if cfg.n is not None else None,
            }
            data = write_json(cfg.out, {"table": meta, "rows": rows})
        case _:
            raise ValueError(f"unknown format {cfg.format}")

    write_digest(cfg.out, data)
    logger.info("wrote %d rows to %s", len(rows), cfg.out)
    return [cfg.out, f"{cfg.out}.sha256"]
