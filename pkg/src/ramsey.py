"""
Ramsey numbers and the constants built from them.

Small Ramsey numbers are recomputed, never looked up. "R(a, b) > n" is a SAT
instance: one variable per pair of an n-vertex graph, a clause forbidding
each a-clique and a clause forbidding each b-stable set. R(a, b) is the
first n whose instance is unsatisfiable. Tournament Ramsey numbers use the
same idea with one variable per oriented pair. Above RAMSEY_SAT_MAX_N the
binomial bound (or 2^(p-1) for tournaments) is used instead.

Every number leaves this module as a Quantity tagged exact, bound or
symbolic. The connectifier constant mu and the decomposition constant beta
exist but are not computable here, so anything depending on them stays a
symbolic expression.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Dict, List, Optional, Tuple

from pysat.formula import IDPool
from pysat.solvers import Cadical195

from .config import RAMSEY_SAT_MAX_N
from .errors import GraphInputError

logger = logging.getLogger(__name__)

EXACT = "exact"
BOUND = "bound"
SYMBOLIC = "symbolic"


@dataclass(frozen=True)
class Quantity:
    """A named number: exact, an upper bound, or a symbolic expression."""
    name: str
    value: Optional[int]
    tag: str
    expr: str = ""

    @property
    def is_numeric(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return str(self.value) if self.is_numeric else self.expr

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tag": self.tag, "expr": self.expr}


# =============================================================================
# SAT INSTANCES
# =============================================================================

def ramsey_instance(n: int, a: int, b: int) -> Tuple[List[List[int]], Dict[Tuple[int, int], int]]:
    """CNF satisfiable iff some graph on n vertices has no a-clique and no b-stable set."""
    pool = IDPool()
    edge_var = {(u, v): pool.id() for u, v in combinations(range(n), 2)}
    cnf = []
    for clique in combinations(range(n), a):
        cnf.append([-edge_var[u, v] for u, v in combinations(clique, 2)])
    for stable in combinations(range(n), b):
        cnf.append([edge_var[u, v] for u, v in combinations(stable, 2)])
    return cnf, edge_var


def tournament_instance(n: int, p: int) -> Tuple[List[List[int]], Dict[Tuple[int, int], int]]:
    """
    CNF satisfiable iff some tournament on n vertices has no transitive
    subtournament on p vertices. Variable (u, v) with u < v is true for u -> v.
    """
    pool = IDPool()
    arc_var = {(u, v): pool.id() for u, v in combinations(range(n), 2)}

    def forward(x: int, y: int) -> int:
        return arc_var[x, y] if x < y else -arc_var[y, x]

    cnf = []
    for subset in combinations(range(n), p):
        for order in permutations(subset):
            cnf.append([-forward(x, y) for x, y in combinations(order, 2)])
    return cnf, arc_var


def _satisfiable(cnf: List[List[int]]) -> bool:
    if not cnf:
        return True
    with Cadical195(bootstrap_with=cnf) as solver:
        return solver.solve()


# =============================================================================
# RAMSEY NUMBERS
# =============================================================================

def ramsey_bound(a: int, b: int) -> int:
    """binom(a + b - 2, a - 1) >= R(a, b)."""
    return comb(a + b - 2, a - 1)


def ramsey_number(a: int, b: int, cache=None) -> Quantity:
    """
    R(a, b): exact when the SAT search settles it within the cap, else the
    binomial bound.
    """
    if a < 1 or b < 1:
        raise GraphInputError(f"Invalid Ramsey arguments ({a}, {b}): both must be >= 1")
    name = f"R({a},{b})"
    if min(a, b) == 1:
        return Quantity(name, 1, EXACT, "trivial")
    if min(a, b) == 2:
        return Quantity(name, max(a, b), EXACT, "trivial")

    key = ("ramsey", min(a, b), max(a, b))
    if cache is not None:
        hit = cache.get_ramsey(key)
        if hit is not None:
            return Quantity(**hit)

    upper = ramsey_bound(a, b)
    result = None
    for n in range(max(a, b), min(upper, RAMSEY_SAT_MAX_N) + 1):
        cnf, _ = ramsey_instance(n, a, b)
        if not _satisfiable(cnf):
            result = Quantity(name, n, EXACT, f"SAT: no 2-colouring of K_{n}")
            break
        logger.debug("%s > %d", name, n)
    if result is None:
        logger.warning("%s is above the SAT cap %d, using the binomial bound", name, RAMSEY_SAT_MAX_N)
        result = Quantity(name, upper, BOUND, f"binom({a + b - 2},{a - 1})")

    if cache is not None and result.tag == EXACT:
        cache.set_ramsey(key, result.to_dict())
    return result


def tournament_ramsey(p: int, cache=None) -> Quantity:
    """
    R_tourn(p): the least n such that every tournament on n vertices has a
    transitive subtournament on p vertices.
    """
    if p < 1:
        raise GraphInputError(f"Invalid tournament size p={p}: must be >= 1")
    name = f"R_tourn({p})"
    if p <= 2:
        return Quantity(name, p, EXACT, "trivial")

    key = ("tournament", p)
    if cache is not None:
        hit = cache.get_ramsey(key)
        if hit is not None:
            return Quantity(**hit)

    power = 2 ** (p - 1)
    for n in range(p, min(power, RAMSEY_SAT_MAX_N) + 1):
        cnf, _ = tournament_instance(n, p)
        if not _satisfiable(cnf):
            result = Quantity(name, n, EXACT, f"SAT: every tournament on {n} vertices")
            if cache is not None:
                cache.set_ramsey(key, result.to_dict())
            return result

    diagonal = ramsey_number(p, p, cache=cache)
    if diagonal.value < power:
        return Quantity(name, diagonal.value, BOUND, f"R({p},{p})")
    return Quantity(name, power, BOUND, f"2^{p - 1}")


# =============================================================================
# DERIVED CONSTANTS
# =============================================================================

def jewel_bound(t: int, delta: int, cache=None) -> Quantity:
    """j(t, delta) = binom(delta, 2) * R(t, 3)."""
    r = ramsey_number(t, 3, cache=cache)
    return Quantity("j", comb(delta, 2) * r.value, r.tag, f"binom({delta},2)*{r.name}")


def sigma_bound(t: int, delta: int, cache=None) -> Quantity:
    """sigma(t, delta) = 2 delta (j(t, delta) + t)."""
    j = jewel_bound(t, delta, cache=cache)
    return Quantity("sigma", 2 * delta * (j.value + t), j.tag, f"2*{delta}*(j+{t})")


def seed_bound(t: int, cache=None) -> Quantity:
    """s(t) = sigma(t, 3)."""
    s = sigma_bound(t, 3, cache=cache)
    return Quantity("s", s.value, s.tag, f"sigma({t},3)")


def constants(t: int, delta: int = 3, nu: int = 2, d: int = 2, r: int = 2, cache=None) -> Dict[str, Quantity]:
    """
    Every constant of the construction, in dependency order.

    Args:
        t: clique bound of the class
        delta: maximum degree of the smooth tree
        nu: number of paths the banana step keeps
        d, r: degree and radius of the tree T_d^r to extract
    """
    for label, value in (("t", t), ("delta", delta), ("nu", nu), ("d", d), ("r", r)):
        if value < 1:
            raise GraphInputError(f"Invalid {label}={value}: must be >= 1")

    r_t3 = ramsey_number(t, 3, cache=cache)
    j = jewel_bound(t, delta, cache=cache)
    sigma = sigma_bound(t, delta, cache=cache)
    s = seed_bound(t, cache=cache)
    tourn = tournament_ramsey(nu + 1, cache=cache)
    h = max(2 * s.value + 1, t)
    mu = Quantity("mu", None, SYMBOLIC, f"mu({h})")
    gamma = Quantity("gamma", None, SYMBOLIC, f"R({tourn}, {mu.expr})")
    psi = Quantity("psi", None, SYMBOLIC, f"R({gamma.expr}, {t})")

    m_expr = str(d)
    for _ in range(2, r + 1):
        m_expr = f"psi({t}, ({m_expr}+1)*{d})"
    m_r = Quantity(f"m_{r}", d if r == 1 else None, EXACT if r == 1 else SYMBOLIC, m_expr)
    tau = Quantity("tau", None, SYMBOLIC, f"beta(max(m(f,f,{t}), {t + 1}), {t})")

    return {
        "R(t,3)": r_t3,
        "j": j,
        "sigma": sigma,
        "s": s,
        "R_tourn(nu+1)": tourn,
        "mu": mu,
        "gamma": gamma,
        "psi": psi,
        "m_r": m_r,
        "tau": tau,
    }


def constants_dict(t: int, delta: int = 3, nu: int = 2, d: int = 2, r: int = 2, cache=None) -> dict:
    values = constants(t, delta, nu, d, r, cache=cache)
    return {
        "inputs": {"t": t, "delta": delta, "nu": nu, "d": d, "r": r},
        "constants": {name: q.to_dict() for name, q in values.items()},
    }
