"""
Verification harness: registered checks run over enumerated and seeded random instances.

The pyramid checks first walk every host up to EXHAUSTIVE_MAX_N vertices
(all sorted length triples in 2..4, every attachment set of a short outside
path); sample indices past that enumeration draw random hosts up to max_n.

Each sample i of check c draws its instance from random.Random("seed:c:i"),
so a sample is reproducible on its own and samples can be sharded over a
process pool in any order. Summaries merge by adding counters and keeping
the failure with the smallest sample index.

A sample ends as:
- pass: the stated property held
- rejected: the instance was not a valid input (host outside the class,
  strip failing its axioms); nothing was checked
- fail: the property failed on a valid instance
"""

import logging
import random
from itertools import combinations_with_replacement
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .config import DEFAULT_CLIQUE_BOUND, DEFAULT_MAX_N, DEFAULT_SAMPLES, EXHAUSTIVE_MAX_N, EXHAUSTIVE_PATH_SIZE
from .errors import GraphInputError, HypothesisViolation, ObstructionFound, PreconditionError
from .extraction import TreeWitness, banana, extract_tree, paths_needed, validate_tree_witness, verify_banana
from .generators import layered_path_system, make_config, random_saturation_instance
from .graph import Graph
from .graph_io import encode_graph6
from .obstructions import in_class
from .pyramids import Outcome, classify_wrt_pyramid, is_wide, path_outcomes
from .saturation import residual_violation, saturate
from .separators import (
    apex_separator,
    bag_clique_defect,
    check_adjacent_jewel_centers,
    jewel_counts,
    jewel_separator,
    verify_jewel_locality,
)
from .strips import StripStructure, canonical_pyramid_strip, is_local, locality, validate_strip

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
REJECTED = "rejected"


@dataclass(frozen=True)
class SampleOutcome:
    status: str
    message: str = ""
    host: Optional[Graph] = None
    witness: dict = field(default_factory=dict)


def _passed() -> SampleOutcome:
    return SampleOutcome(PASS)


def _rejected(message: str) -> SampleOutcome:
    return SampleOutcome(REJECTED, message)


def _failed(message: str, host: Graph, **witness) -> SampleOutcome:
    return SampleOutcome(FAIL, message, host, witness)


# =============================================================================
# INSTANCES
# =============================================================================

def _draw_lengths(rng: random.Random, budget: int) -> Optional[List[int]]:
    """Three path lengths in 2..4 with 1 + sum <= budget, or None."""
    lengths = [2 + int(rng.random() * 3) for _ in range(3)]
    while 1 + sum(lengths) > budget and max(lengths) > 2:
        lengths[lengths.index(max(lengths))] -= 1
    return lengths if 1 + sum(lengths) <= budget else None


def _eligible(base: Graph, sigma) -> List[int]:
    near_apex = {sigma.apex, *(p.vertices[1] for p in sigma.paths)}
    return [v for v in base.vertices if v not in near_apex]


def _decorated_pyramid(rng: random.Random, max_n: int, path_size: int):
    """A long pyramid plus an outside path of path_size vertices attached at random."""
    lengths = _draw_lengths(rng, max_n - path_size)
    if lengths is None:
        return None
    base, sigma = make_config("pyramid", lengths)
    eligible = _eligible(base, sigma)
    outside = list(range(base.n, base.n + path_size))
    edges = list(zip(outside, outside[1:]))
    for x in outside:
        edges.extend((x, v) for v in eligible if rng.random() < 0.35)
    G = base.with_vertices(path_size, edges)
    return G, sigma, tuple(outside)


def pyramid_blocks(limit: int, path_sizes: Sequence[int]) -> List[Tuple[Tuple[int, int, int], int, int]]:
    """
    The exhaustive instance space, smallest hosts first.

    Returns:
        (lengths, path size, attachment count) for every sorted length triple
        in 2..4 and path size whose host has at most `limit` vertices
    """
    blocks = []
    for lengths in combinations_with_replacement(range(2, 5), 3):
        for size in path_sizes:
            if 1 + sum(lengths) + size <= limit:
                blocks.append((lengths, size, 1 << ((sum(lengths) - 3) * size)))
    blocks.sort(key=lambda block: (sum(block[0]) + block[1], block[1], block[0]))
    return blocks


def pyramid_instance(lengths: Sequence[int], path_size: int, code: int):
    """The pyramid host whose outside path attaches along the bits of code, path vertex by path vertex."""
    base, sigma = make_config("pyramid", lengths)
    eligible = _eligible(base, sigma)
    outside = list(range(base.n, base.n + path_size))
    edges = list(zip(outside, outside[1:]))
    for k, x in enumerate(outside):
        bits = code >> (k * len(eligible))
        edges.extend((x, v) for i, v in enumerate(eligible) if bits >> i & 1)
    return base.with_vertices(path_size, edges), sigma, tuple(outside)


EXHAUSTIVE_SIZES = {"pyramid-vertex": (1,), "pyramid-path": tuple(range(1, EXHAUSTIVE_PATH_SIZE + 1))}


def _enumerated(index: int, max_n: int, path_sizes: Sequence[int]):
    for lengths, size, count in pyramid_blocks(min(max_n, EXHAUSTIVE_MAX_N), path_sizes):
        if index < count:
            return pyramid_instance(lengths, size, index)
        index -= count
    return None


def _saturated(rng: random.Random, max_n: int):
    """A decorated pyramid host in C_4 and its canonical strip, gated by the axioms."""
    seed = rng.getrandbits(64)
    probe, _ = random_saturation_instance(seed, max_extra=0)
    G, sigma = random_saturation_instance(seed, max_extra=max(0, min(8, max_n - probe.n)))
    S = canonical_pyramid_strip(G, sigma)
    report = validate_strip(G, S)
    if not report.ok:
        return None, f"strip rejected: {report.axiom} {report.message}"
    return (G, sigma, S), ""


# =============================================================================
# CHECKS
# =============================================================================

def _classify_vertex(G: Graph, sigma, p: int) -> SampleOutcome:
    if not in_class(G, force=True):
        return _rejected("host contains a theta or a prism")
    try:
        result = classify_wrt_pyramid(G, sigma.vertices(), sigma.apex, sigma, (p,))
    except ObstructionFound as exc:
        return _failed(str(exc), G, vertex=p)
    wide = is_wide(G, sigma, p)
    if wide != (result.outcome in (Outcome.CORNER_PATH, Outcome.JEWEL)):
        return _failed(f"wide={wide} but classified {result.outcome.value}", G, vertex=p)
    return _passed()


def _classify_path(G: Graph, sigma, P: Tuple[int, ...]) -> SampleOutcome:
    if not in_class(G, force=True):
        return _rejected("host contains a theta or a prism")
    outcomes = path_outcomes(G, sigma, P)
    held = [name for name, value in outcomes.items() if value is not None]
    if not held:
        return _failed("no outcome holds", G, path=list(P))
    if "local" in held and len(held) > 1:
        return _failed(f"local path also has {held[1:]}", G, path=list(P))
    return _passed()


def check_pyramid_vertex(rng: random.Random, max_n: int, t: int) -> SampleOutcome:
    """A single outside vertex is wide exactly when it is a corner path or a jewel."""
    drawn = _decorated_pyramid(rng, max_n, 1)
    if drawn is None:
        return _rejected("max_n too small for a long pyramid")
    G, sigma, (p,) = drawn
    return _classify_vertex(G, sigma, p)


def enumerate_pyramid_vertex(index: int, max_n: int) -> Optional[SampleOutcome]:
    drawn = _enumerated(index, max_n, EXHAUSTIVE_SIZES["pyramid-vertex"])
    if drawn is None:
        return None
    G, sigma, (p,) = drawn
    return _classify_vertex(G, sigma, p)


def check_pyramid_path(rng: random.Random, max_n: int, t: int) -> SampleOutcome:
    """Some outcome holds for an outside path, and a local path has no other."""
    drawn = _decorated_pyramid(rng, max_n, 1 + int(rng.random() * 3))
    if drawn is None:
        return _rejected("max_n too small for a long pyramid")
    return _classify_path(*drawn)


def enumerate_pyramid_path(index: int, max_n: int) -> Optional[SampleOutcome]:
    drawn = _enumerated(index, max_n, EXHAUSTIVE_SIZES["pyramid-path"])
    return None if drawn is None else _classify_path(*drawn)


def check_strip_locality(rng: random.Random, max_n: int, t: int) -> SampleOutcome:
    """A nonlocal set always yields a nonlocal pair drawn from it."""
    drawn, reason = _saturated(rng, max_n)
    if drawn is None:
        return _rejected(reason)
    G, _, S = drawn
    body = sorted(S.eta_T())
    size = 2 + int(rng.random() * 3)
    X = []
    while len(X) < min(size, len(body)):
        x = body[int(rng.random() * len(body))]
        if x not in X:
            X.append(x)
    result = locality(S, X)
    if result.local != is_local(S, X):
        return _failed("locality disagrees with is_local", G, set=sorted(X))
    if not result.local and (not set(result.pair) <= set(X) or is_local(S, result.pair)):
        return _failed("returned pair is not a nonlocal pair of X", G, set=sorted(X), pair=list(result.pair))
    return _passed()


def _saturate_or_fail(G: Graph, S: StripStructure):
    try:
        return saturate(G, S), None
    except (ObstructionFound, HypothesisViolation) as exc:
        return None, _failed(f"saturation failed: {exc}", G)


def check_saturation(rng: random.Random, max_n: int, t: int) -> SampleOutcome:
    """Saturation returns a larger valid rich structure with an anticomplete residual."""
    drawn, reason = _saturated(rng, max_n)
    if drawn is None:
        return _rejected(reason)
    G, _, S = drawn
    result, failure = _saturate_or_fail(G, S)
    if failure:
        return failure
    report = validate_strip(G, result.strip)
    if not (report.ok and report.substantial and report.rich):
        return _failed("saturated structure is not a valid substantial rich structure", G, report=report.to_dict())
    if not S.leq(result.strip):
        return _failed("saturated structure does not contain the original", G)
    crossing = residual_violation(G, result.strip, result.jewels)
    if crossing is not None:
        return _failed("residual touches the structure", G, edge=list(crossing))
    return _passed()


def _strip_check(property_check: Callable) -> Callable:
    """Wrap a property of a saturated structure into a sample check."""

    def check(rng: random.Random, max_n: int, t: int) -> SampleOutcome:
        drawn, reason = _saturated(rng, max_n)
        if drawn is None:
            return _rejected(reason)
        G, _, S = drawn
        result, failure = _saturate_or_fail(G, S)
        if failure:
            return failure
        try:
            return property_check(G, result.strip, result.jewels, t)
        except (ObstructionFound, HypothesisViolation, PreconditionError) as exc:
            return _failed(f"{type(exc).__name__}: {exc}", G)

    check.__doc__ = property_check.__doc__
    return check


def _jewel_locality(G, S, index, t) -> SampleOutcome:
    """Every jewel attaches inside its seagull's region."""
    report = verify_jewel_locality(G, S, index)
    if not report.ok:
        return _failed("jewel attaches outside its region", G, report=report.to_dict())
    return _passed()


def _bag_cliques(G, S, index, t) -> SampleOutcome:
    """Each bag misses being a clique by at most one interface."""
    for v in S.tree.tree.vertices:
        defect = bag_clique_defect(S, v)
        if len(defect) > 1:
            return _failed(f"bag at {v} has defect {len(defect)}", G, defect=defect.to_dict())
    return _passed()


def _jewel_count(G, S, index, t) -> SampleOutcome:
    """Fewer than j(t, delta) jewels at every tree vertex."""
    report = jewel_counts(G, S, index, t)
    if not report.ok:
        return _failed("jewel count breach", G, report=report.to_dict())
    return _passed()


def _adjacent_centres(G, S, index, t) -> SampleOutcome:
    """Jewels joined outside the structure have adjacent centres."""
    violations = check_adjacent_jewel_centers(G, S, index)
    if violations:
        return _failed("jewels at non-adjacent centres are joined", G, violation=violations[0].to_dict())
    return _passed()


def _jewel_separators(G, S, index, t) -> SampleOutcome:
    """Residual vertices are cut off the structure by fewer than 2j vertices."""
    skip = S.eta_plus_T() | index.all_jewels()
    for x in G.vertices:
        if x in skip:
            continue
        certificate = jewel_separator(G, S, x, t=t, index=index)
        if not certificate.verified or certificate.within_bound is False:
            return _failed(f"bad jewel separator for {x}", G, certificate=certificate.to_dict())
    return _passed()


def _apex_separators(G, S, index, t) -> SampleOutcome:
    """The apex is cut off every vertex outside N[a] by fewer than sigma vertices."""
    a = S.apex
    for x in G.vertices:
        if x == a or G.has_edge(a, x):
            continue
        certificate = apex_separator(G, S, x, t=t, index=index)
        if not certificate.verified or certificate.within_bound is False:
            return _failed(f"bad apex separator for {x}", G, certificate=certificate.to_dict())
    return _passed()


def check_banana(rng: random.Random, max_n: int, t: int) -> SampleOutcome:
    """Selections re-verify; without cross edges stage 3 fails with a stable set."""
    nu = 2 + int(rng.random() * 3)
    count = nu + 1 + int(rng.random() * 3)
    layers = 2 + int(rng.random() * 2)
    wired = rng.random() < 0.75
    G, system = layered_path_system(count, layers, wired=wired)
    result = banana(G, 0, 1, system, nu)
    if wired:
        if not result.ok:
            return _failed(f"stage {result.stage}: {result.message}", G, nu=nu)
        problem = verify_banana(G, 0, 1, result.paths)
        if problem:
            return _failed(problem, G, nu=nu)
        return _passed()
    if result.ok or result.stage != 3 or len(result.witness.get("stable_in_D", ())) != count:
        return _failed("unwired system did not fail at stage 3 with a full stable set", G, result=result.to_dict())
    return _passed()


def check_tree_extraction(rng: random.Random, max_n: int, t: int) -> SampleOutcome:
    """Extracted trees pass the independent T_d^r validation."""
    d = 2 + int(rng.random() * 2)
    r = 1 + int(rng.random() * 2)
    count = paths_needed(d, r) + int(rng.random() * 3)
    G, system = layered_path_system(count, r, wired=True)
    grown = extract_tree(G, 0, 1, system, d, r)
    if not isinstance(grown, TreeWitness):
        return _failed(f"extraction failed at depth {grown.depth}: {grown.reason}", G, d=d, r=r)
    problem = validate_tree_witness(G, grown, 0, 1, d, r, system.paths)
    if problem:
        return _failed(problem, G, d=d, r=r, tree=grown.to_dict())
    return _passed()


@dataclass(frozen=True)
class Check:
    id: str
    run: Callable[[random.Random, int, int], SampleOutcome]
    enumerated: Optional[Callable[[int, int], Optional[SampleOutcome]]] = None

    @property
    def description(self) -> str:
        return (self.run.__doc__ or "").strip().splitlines()[0]


REGISTRY: Dict[str, Check] = {
    check.id: check
    for check in (
        Check("pyramid-vertex", check_pyramid_vertex, enumerate_pyramid_vertex),
        Check("pyramid-path", check_pyramid_path, enumerate_pyramid_path),
        Check("strip-locality", check_strip_locality),
        Check("saturation", check_saturation),
        Check("jewel-locality", _strip_check(_jewel_locality)),
        Check("bag-clique", _strip_check(_bag_cliques)),
        Check("jewel-count", _strip_check(_jewel_count)),
        Check("adjacent-centres", _strip_check(_adjacent_centres)),
        Check("jewel-separator", _strip_check(_jewel_separators)),
        Check("apex-separator", _strip_check(_apex_separators)),
        Check("banana", check_banana),
        Check("tree-extraction", check_tree_extraction),
    )
}


def get_check(check_id: str) -> Check:
    if check_id not in REGISTRY:
        raise GraphInputError(f"Unknown check: {check_id}. Registered: {', '.join(REGISTRY)}")
    return REGISTRY[check_id]


def exhaustive_count(check_id: str, max_n: int = DEFAULT_MAX_N) -> int:
    """How many leading sample indices of a check are enumerated rather than drawn."""
    get_check(check_id)
    if check_id not in EXHAUSTIVE_SIZES:
        return 0
    return sum(count for _, _, count in pyramid_blocks(min(max_n, EXHAUSTIVE_MAX_N), EXHAUSTIVE_SIZES[check_id]))


# =============================================================================
# RUNNING AND MERGING
# =============================================================================

@dataclass
class CheckSummary:
    check: str
    samples: int = 0
    passed: int = 0
    failed: int = 0
    rejected: int = 0
    first_failure: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, index: int, outcome: SampleOutcome) -> None:
        self.samples += 1
        if outcome.status == PASS:
            self.passed += 1
        elif outcome.status == REJECTED:
            self.rejected += 1
        else:
            self.failed += 1
            failure = {
                "sample": index,
                "message": outcome.message,
                "graph6": encode_graph6(outcome.host) if outcome.host is not None else None,
                "witness": outcome.witness,
            }
            if self.first_failure is None or index < self.first_failure["sample"]:
                self.first_failure = failure

    def merge(self, other: "CheckSummary") -> "CheckSummary":
        first = [f for f in (self.first_failure, other.first_failure) if f is not None]
        return CheckSummary(
            self.check,
            self.samples + other.samples,
            self.passed + other.passed,
            self.failed + other.failed,
            self.rejected + other.rejected,
            min(first, key=lambda f: f["sample"]) if first else None,
        )

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "ok": self.ok,
            "samples": self.samples,
            "passed": self.passed,
            "failed": self.failed,
            "rejected": self.rejected,
            "first_failure": self.first_failure,
        }


def sample_rng(seed: int, check_id: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{check_id}:{index}")


def run_samples(check_id: str, seed: int, max_n: int, t: int, indices: Iterable[int]) -> CheckSummary:
    check = get_check(check_id)
    summary = CheckSummary(check_id)
    for i in indices:
        outcome = check.enumerated(i, max_n) if check.enumerated else None
        if outcome is None:
            outcome = check.run(sample_rng(seed, check_id, i), max_n, t)
        if outcome.status == FAIL and outcome.host is not None and not in_class(outcome.host, force=True):
            outcome = _rejected(f"host left the class: {outcome.message}")
        summary.record(i, outcome)
    logger.debug("%s: %d samples, %d failed", check_id, summary.samples, summary.failed)
    return summary


def _run_chunk(args: Tuple[str, int, int, int, int, int]) -> CheckSummary:
    check_id, seed, max_n, t, start, stop = args
    return run_samples(check_id, seed, max_n, t, range(start, stop))


def verify(
    check_id: str,
    samples: int = DEFAULT_SAMPLES,
    max_n: int = DEFAULT_MAX_N,
    seed: int = 0,
    jobs: int = 1,
    t: int = DEFAULT_CLIQUE_BOUND,
) -> CheckSummary:
    """
    Run `samples` instances of a registered check.

    The pyramid checks spend their first exhaustive_count(check_id, max_n)
    indices on the enumerated hosts.

    Args:
        jobs: worker processes; the summary does not depend on it
    """
    get_check(check_id)
    if samples < 0 or jobs < 1:
        raise GraphInputError(f"Invalid harness arguments: samples={samples}, jobs={jobs}")
    if jobs == 1 or samples < 2:
        return run_samples(check_id, seed, max_n, t, range(samples))

    step = -(-samples // jobs)
    chunks = [(check_id, seed, max_n, t, start, min(start + step, samples)) for start in range(0, samples, step)]
    summary = CheckSummary(check_id)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_run_chunk, chunks):
            summary = summary.merge(part)
    return summary
