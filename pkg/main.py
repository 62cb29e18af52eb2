"""
thetaprism - Main CLI Entry Point

Builds, checks and certifies the objects of the (theta, prism)-free graph
machinery: obstruction detection, strip-structures and their saturation,
explicit separators, induced-tree extraction and the randomized harness.

Every command prints one JSON certificate on stdout (or writes it to --out).
Human-readable tables go to stderr.

Exit codes:
    0  definitive result
    1  bad input, unmet precondition, or a failed harness check
    2  inconclusive (search cap or budget)

Usage:
    python main.py detect --kind theta --in k23.g6
    python main.py tw --in wall3.g6
    python main.py verify --check pyramid-vertex --samples 200 --seed 7
"""

import json
import sys
from typing import List, Optional

import click
import typer
from dotenv import load_dotenv
from rich.prompt import Prompt

from src.cache import CacheManager
from src.certificates import Certificate, make_certificate, to_json
from src.embeddings import validate_embedding
from src.errors import (
    CapExceededError,
    GraphInputError,
    HypothesisViolation,
    Inconclusive,
    ObstructionFound,
    PreconditionError,
    RejectionBudgetExhausted,
)
from src.exporter import export_certificate
from src.extraction import (
    TreeWitness,
    banana,
    connectify,
    extract_tree,
    forest_pipeline,
    kp_trichotomy,
    validate_connector,
    validate_trichotomy,
    verify_banana,
)
from src.generators import (
    CaterpillarSpec,
    layered_path_system,
    make_a_seed,
    make_config,
    make_T_d_r,
    make_wall,
    parse_lengths,
    random_class_graph,
)
from src.graph import Graph
from src.graph_io import FORMATS, encode, read_graph, read_path_system, read_text, read_vertex_set
from src.harness import REGISTRY, verify as run_harness
from src.logging_setup import configure_logging
from src.obstructions import (
    class_membership,
    find_biclique,
    find_clique,
    find_prism,
    find_pyramid,
    find_strong_block,
    find_theta,
    is_t_clean,
    validate_strong_block,
)
from src.presenter import ResultsPresenter
from src.ramsey import constants as compute_constants
from src.saturation import saturate
from src.separators import apex_separator, jewel_separator, seed_separator
from src.strips import find_strip_jewels, read_strip, validate_strip
from src.treewidth import treewidth, validate_decomposition
from src.config import (
    CACHE_DIR,
    DEFAULT_CLIQUE_BOUND,
    DEFAULT_MAX_N,
    DEFAULT_SAMPLES,
    TOOL_NAME,
)

# Load environment variables
load_dotenv()

# Initialize Typer apps and the stderr presenter
app = typer.Typer(
    name=TOOL_NAME,
    help="Detect, decompose and certify (theta, prism)-free graphs.",
    no_args_is_help=True,
)
strip_app = typer.Typer(help="Validate, saturate and index (T,a)-strip-structures.")
tree_app = typer.Typer(help="Banana step, tree extraction, connectifier and trichotomy.")
app.add_typer(strip_app, name="strip")
app.add_typer(tree_app, name="tree")

presenter = ResultsPresenter()

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONCLUSIVE = 2

DETECT_KINDS = ("theta", "prism", "pyramid", "clique", "biclique", "strong-block")
GEN_KINDS = ("theta", "prism", "pyramid", "wall", "seed", "random", "tree", "layered")


# =============================================================================
# SHARED HELPERS
# =============================================================================

def _emit(certificate: Certificate, out: str = "-", code: int = EXIT_OK):
    """Print or export a certificate, then leave with the given exit code."""
    if out == "-":
        typer.echo(to_json(certificate))
    else:
        export_certificate(certificate, out)
        presenter.show_status(f"Certificate written to {out}", style="green")
    raise typer.Exit(code)


def _inconclusive(kind: str, G: Optional[Graph], result: Inconclusive, out: str, inputs: Optional[dict] = None):
    presenter.show_status(f"Inconclusive: {result.reason}")
    _emit(make_certificate(kind, G, "inconclusive", result.to_dict(), inputs=inputs), out, EXIT_INCONCLUSIVE)


def _cache(use_cache: bool) -> Optional[CacheManager]:
    return CacheManager() if use_cache else None


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log search phases on stderr"),
):
    """
    Detect, decompose and certify (theta, prism)-free graphs.
    """
    configure_logging(verbose)


# =============================================================================
# GENERATION
# =============================================================================

@app.command()
def gen(
    kind: str = typer.Option(..., "--kind", "-k", help=f"What to build: {', '.join(GEN_KINDS)}"),
    lengths: str = typer.Option(None, "--lengths", "-l", help="Path lengths for theta/prism/pyramid, e.g. 2,3,4"),
    t: int = typer.Option(3, "--t", "-t", help="Wall size, or the clique bound for random graphs"),
    n: int = typer.Option(8, "--n", "-n", help="Vertex count for random graphs"),
    seed: int = typer.Option(0, "--seed", "-s", help="Random seed"),
    spec: str = typer.Option("L", "--spec", help="Caterpillar spec for seeds, e.g. L.LL"),
    d: int = typer.Option(2, "--d", help="Degree of T_d^r, or of the layered system"),
    r: int = typer.Option(2, "--r", help="Radius of T_d^r, or layers of the layered system"),
    count: int = typer.Option(7, "--count", help="Paths in a layered path system"),
    unwired: bool = typer.Option(False, "--unwired", help="Layered system without cross edges"),
    paths_out: str = typer.Option(None, "--paths-out", help="Where to write the layered path system (JSON)"),
    fmt: str = typer.Option("graph6", "--format", "-f", help=f"Output format: {', '.join(FORMATS)}"),
    out: str = typer.Option("-", "--out", "-o", help="Output file, or - for stdout"),
    force: bool = typer.Option(False, "--force", help="Allow random graphs above the size cap"),
):
    """
    Generate a graph: a configuration, a wall, an a-seed, a random class member,
    the tree T_d^r, or a layered path system.

    Unlike the other commands this prints the graph itself, not a certificate.
    """
    if kind in ("theta", "prism", "pyramid"):
        G, _ = make_config(kind, parse_lengths(lengths))
    elif kind == "wall":
        G = make_wall(t)
    elif kind == "seed":
        G, a, H = make_a_seed(CaterpillarSpec.parse(spec))
        presenter.show_status(f"apex a={a}, |H|={len(H)}", style="dim")
    elif kind == "random":
        G = random_class_graph(n, t, seed, force=force)
    elif kind == "tree":
        G, root = make_T_d_r(d, r)
        presenter.show_status(f"root={root}", style="dim")
    elif kind == "layered":
        G, system = layered_path_system(count, r, wired=not unwired)
        if paths_out:
            with open(paths_out, "w", encoding="utf-8") as f:
                f.write(json.dumps(system.to_dict(), sort_keys=True) + "\n")
        else:
            presenter.show_status(f"a={system.source}, b={system.sink}; pass --paths-out to keep the paths")
    else:
        raise GraphInputError(f"Invalid kind: {kind}. Must be one of {', '.join(GEN_KINDS)}")

    text = encode(G, fmt)
    if out == "-":
        typer.echo(text)
    else:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    raise typer.Exit(EXIT_OK)


# =============================================================================
# DETECTION AND CLASSES
# =============================================================================

@app.command()
def detect(
    kind: str = typer.Option(..., "--kind", "-k", help=f"Configuration: {', '.join(DETECT_KINDS)}"),
    source: str = typer.Option("-", "--in", "-i", help="Input graph (graph6 or JSON), or - for stdin"),
    size: int = typer.Option(3, "--size", help="k for clique, biclique and strong-block"),
    long_only: bool = typer.Option(False, "--long", help="Pyramids: only long ones"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file (.json or .md), or - for stdout"),
    force: bool = typer.Option(False, "--force", help="Search above the exhaustive caps"),
):
    """
    Search for one configuration and certify the witness.

    outcome is "found" with a re-validated witness, or "none" after an
    exhaustive search.
    """
    G = read_graph(source, fmt)
    inputs = {"kind": kind, "size": size, "long": long_only}

    if kind == "theta":
        witness = find_theta(G, force=force)
    elif kind == "prism":
        witness = find_prism(G, force=force)
    elif kind == "pyramid":
        witness = find_pyramid(G, force=force, long_only=long_only)
    elif kind == "clique":
        witness = find_clique(G, size)
    elif kind == "biclique":
        witness = find_biclique(G, size)
    elif kind == "strong-block":
        witness = find_strong_block(G, size)
        if isinstance(witness, Inconclusive):
            _inconclusive("detect", G, witness, out, inputs)
    else:
        raise GraphInputError(f"Invalid kind: {kind}. Must be one of {', '.join(DETECT_KINDS)}")

    if witness is None:
        _emit(make_certificate("detect", G, "none", {"kind": kind}, verified=True, inputs=inputs), out)

    if kind == "clique":
        problem = None if G.is_clique(witness) else "not a clique"
        payload = {"kind": kind, "vertices": sorted(witness), "paths": []}
    elif kind == "biclique":
        X, Y = witness
        complete = all(G.has_edge(x, y) for x in X for y in Y)
        problem = None if complete and G.is_stable(X) and G.is_stable(Y) else "not an induced biclique"
        payload = {"kind": kind, "vertices": sorted(X + Y), "sides": [list(X), list(Y)], "paths": []}
    elif kind == "strong-block":
        problem = validate_strong_block(G, witness, size)
        payload = witness.to_dict()
    else:
        problem = validate_embedding(G, witness)
        payload = witness.to_dict()

    if problem:
        raise RuntimeError(f"detector returned an invalid witness: {problem}")
    payload["verified"] = True
    _emit(make_certificate("detect", G, "found", payload, verified=True, inputs=inputs), out)


@app.command(name="class")
def class_(
    t: int = typer.Option(DEFAULT_CLIQUE_BOUND, "--t", "-t", help="Clique bound"),
    source: str = typer.Option("-", "--in", "-i", help="Input graph, or - for stdin"),
    forest: str = typer.Option(None, "--forest", "-F", help="Forest F for C_t(F) membership"),
    clean: bool = typer.Option(False, "--clean", help="Also decide whether G is t-clean"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
    force: bool = typer.Option(False, "--force", help="Search above the exhaustive caps"),
):
    """
    Membership in C (theta- and prism-free), C_t and optionally C_t(F).
    """
    G = read_graph(source, fmt)
    F = read_graph(forest) if forest else None
    report = class_membership(G, t, F, force=force)
    presenter.show_membership(report)

    witness = report.to_dict()
    if clean:
        cleanliness = is_t_clean(G, t, force=force)
        if isinstance(cleanliness, Inconclusive):
            _inconclusive("class", G, cleanliness, out, {"t": t})
        witness["clean"] = cleanliness.to_dict()

    outcome = "member" if report.in_class_t and report.in_class_t_forest is not False else "not-member"
    inputs = {"t": t, "forest": encode(F) if F is not None else None, "clean": clean}
    _emit(make_certificate("class", G, outcome, witness, verified=True, inputs=inputs), out)


@app.command()
def tw(
    source: str = typer.Option("-", "--in", "-i", help="Input graph, or - for stdin"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
    force: bool = typer.Option(False, "--force", help="Exact search above the cap"),
    use_cache: bool = typer.Option(True, "--cache/--no-cache", help="Reuse exact results from disk"),
):
    """
    Treewidth with a validated tree decomposition.

    Above the exact cap only bounds are reported and the exit code is 2.
    """
    G = read_graph(source, fmt)
    cache = _cache(use_cache)
    result = treewidth(G, force=force, cache=cache)
    verified = validate_decomposition(G, result.decomposition).ok

    if not result.exact:
        presenter.show_status(f"treewidth between {result.lower} and {result.upper}")
        cert = make_certificate("tw", G, "inconclusive", result.to_dict(), verified=verified)
        _emit(cert, out, EXIT_INCONCLUSIVE)

    presenter.show_status(f"treewidth = {result.width}", style="green")
    _emit(make_certificate("tw", G, "exact", result.to_dict(), verified=verified), out)


@app.command()
def constants(
    t: int = typer.Option(DEFAULT_CLIQUE_BOUND, "--t", "-t", help="Clique bound"),
    delta: int = typer.Option(3, "--delta", help="Maximum degree of the smooth tree"),
    nu: int = typer.Option(2, "--nu", help="Paths kept by the banana step"),
    d: int = typer.Option(2, "--d", help="Degree of T_d^r"),
    r: int = typer.Option(2, "--r", help="Radius of T_d^r"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
    use_cache: bool = typer.Option(True, "--cache/--no-cache", help="Reuse exact Ramsey values from disk"),
):
    """
    The constants of the construction, each tagged exact, bound or symbolic.
    """
    values = compute_constants(t, delta, nu, d, r, cache=_cache(use_cache))
    presenter.show_constants(values)
    witness = {
        "inputs": {"t": t, "delta": delta, "nu": nu, "d": d, "r": r},
        "constants": {name: q.to_dict() for name, q in values.items()},
    }
    _emit(make_certificate("constants", None, "computed", witness, verified=True, inputs=witness["inputs"]), out)


# =============================================================================
# STRIP-STRUCTURES
# =============================================================================

def _load_strip(source: str, strip: str, fmt: Optional[str]):
    G = read_graph(source, fmt)
    text = read_text(strip)
    return G, read_strip(text, G), text


@strip_app.command("validate")
def strip_validate(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    strip: str = typer.Option(..., "--strip", "-S", help="Strip-structure JSON"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
):
    """
    Check the strip axioms, then tameness, substantiality and richness.
    """
    G, S, text = _load_strip(source, strip, fmt)
    report = validate_strip(G, S)
    outcome = "valid" if report.ok else "invalid"
    if not report.ok:
        presenter.show_status(f"{report.axiom}: {report.message}", style="red")
    _emit(make_certificate("strip-validate", G, outcome, report.to_dict(), verified=True, inputs={"strip": text}), out)


@strip_app.command("saturate")
def strip_saturate(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    strip: str = typer.Option(..., "--strip", "-S", help="Strip-structure JSON"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
):
    """
    Grow a tame, substantial, rich strip-structure until it is saturated.

    When the growth breaks down because the host holds a theta or a prism,
    the obstruction is certified instead and the exit code is 1.
    """
    G, S, text = _load_strip(source, strip, fmt)
    inputs = {"strip": text}
    try:
        result = saturate(G, S)
    except ObstructionFound as e:
        presenter.show_error(str(e))
        verified = validate_embedding(G, e.witness) is None
        _emit(make_certificate("strip-saturate", G, "obstruction", e.witness.to_dict(), verified, inputs=inputs), out, EXIT_INPUT)

    verified = validate_strip(G, result.strip).ok
    presenter.show_status(f"{len(result.augmentations)} augmentation(s), residual {len(result.residual)}", style="green")
    _emit(make_certificate("strip-saturate", G, "saturated", result.to_dict(), verified, inputs=inputs), out)


@strip_app.command("jewels")
def strip_jewels(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    strip: str = typer.Option(..., "--strip", "-S", help="Strip-structure JSON"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
):
    """
    Index the jewels of every branch vertex of the strip's tree.
    """
    G, S, text = _load_strip(source, strip, fmt)
    index = find_strip_jewels(G, S)
    _emit(make_certificate("strip-jewels", G, "indexed", index.to_dict(), verified=True, inputs={"strip": text}), out)


# =============================================================================
# SEPARATORS
# =============================================================================

@app.command()
def sep(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    apex: int = typer.Option(..., "--apex", "-a", help="Apex a of the strip or seed"),
    target: int = typer.Option(..., "--target", "-x", help="Vertex x to separate from a"),
    strip: str = typer.Option(None, "--strip", "-S", help="Saturated strip-structure JSON"),
    seed: str = typer.Option(None, "--seed", help="a-seed vertex set JSON ({\"vertices\": [...]})"),
    jewel: bool = typer.Option(False, "--jewel", help="With --strip: separate a jewel from a instead"),
    t: int = typer.Option(DEFAULT_CLIQUE_BOUND, "--t", "-t", help="Clique bound for the size bound"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
    use_cache: bool = typer.Option(True, "--cache/--no-cache", help="Reuse exact Ramsey values from disk"),
):
    """
    Build an explicit a-x separator from a saturated strip or an a-seed.
    """
    if (strip is None) == (seed is None):
        raise GraphInputError("Invalid sep arguments: give exactly one of --strip and --seed")
    G = read_graph(source, fmt)
    cache = _cache(use_cache)

    if strip is not None:
        text = read_text(strip)
        S = read_strip(text, G)
        if S.apex != apex:
            raise GraphInputError(f"Invalid apex: strip has apex {S.apex}, --apex was {apex}")
        build = jewel_separator if jewel else apex_separator
        certificate = build(G, S, target, t=t, cache=cache)
        inputs = {"strip": text, "x": target, "t": t, "jewel": jewel}
    else:
        model = read_vertex_set(seed, G)
        if model.apex is not None and model.apex != apex:
            raise GraphInputError(f"Invalid apex: seed file has apex {model.apex}, --apex was {apex}")
        certificate = seed_separator(G, apex, model.vertices, target, t=t, cache=cache)
        inputs = {"seed": sorted(model.vertices), "x": target, "t": t}

    presenter.show_status(f"|S| = {certificate.size} ({certificate.provenance})", style="green")
    _emit(make_certificate("sep", G, "separated", certificate.to_dict(), certificate.verified, inputs=inputs), out)


# =============================================================================
# TREES
# =============================================================================

@tree_app.command("extract")
def tree_extract(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    a: int = typer.Option(..., "--a", help="Root vertex"),
    b: int = typer.Option(..., "--b", help="Common far end of the paths"),
    paths: str = typer.Option(..., "--paths", "-P", help="Path system JSON"),
    d: int = typer.Option(2, "--d", help="Degree of T_d^r"),
    r: int = typer.Option(2, "--r", help="Radius of T_d^r"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
):
    """
    Grow a copy of T_d^r rooted at a from internally disjoint a-b paths.
    """
    G = read_graph(source, fmt)
    system = read_path_system(paths, G)
    inputs = {"paths": system.to_dict(), "d": d, "r": r}
    result = extract_tree(G, a, b, system, d, r)
    if isinstance(result, TreeWitness):
        presenter.show_status(f"T_{d}^{r} found on {len(result.vertices)} vertices", style="green")
        _emit(make_certificate("tree-extract", G, "found", result.to_dict(), verified=True, inputs=inputs), out)
    presenter.show_status(f"stopped at depth {result.depth}: {result.reason}")
    _emit(make_certificate("tree-extract", G, "failed", result.to_dict(), inputs=inputs), out)


@tree_app.command("banana")
def tree_banana(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    a: int = typer.Option(..., "--a", help="Common start of the paths"),
    b: int = typer.Option(..., "--b", help="Common end of the paths"),
    paths: str = typer.Option(..., "--paths", "-P", help="Path system JSON"),
    nu: int = typer.Option(2, "--nu", help="Paths to keep"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
):
    """
    Keep nu paths whose first vertices are stable and see the later paths.
    """
    G = read_graph(source, fmt)
    system = read_path_system(paths, G)
    result = banana(G, a, b, system, nu)
    inputs = {"paths": system.to_dict(), "nu": nu}
    verified = result.ok and verify_banana(G, a, b, result.paths) is None
    if not result.ok:
        presenter.show_status(f"stage {result.stage}: {result.message}")
    _emit(make_certificate("tree-banana", G, "found" if result.ok else "failed", result.to_dict(), verified, inputs=inputs), out)


@tree_app.command("connectify")
def tree_connectify(
    source: str = typer.Option(..., "--in", "-i", help="Connected host graph"),
    vertex_set: str = typer.Option(..., "--set", "-S", help="Vertex set S (JSON list or {\"vertices\": [...]})"),
    h: int = typer.Option(3, "--h", help="Vertices of S the connector must hold"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
):
    """
    An induced path, subdivided star, caterpillar or line graph of a
    caterpillar meeting S in h vertices.
    """
    G = read_graph(source, fmt)
    S = read_vertex_set(vertex_set, G).vertices
    inputs = {"S": sorted(S), "h": h}
    result = connectify(G, S, h)
    if isinstance(result, Inconclusive):
        _inconclusive("tree-connectify", G, result, out, inputs)
    if not result.found and result.exhausted:
        cert = make_certificate("tree-connectify", G, "inconclusive", result.to_dict(), inputs=inputs)
        _emit(cert, out, EXIT_INCONCLUSIVE)
    verified = result.found and validate_connector(G, S, h, result) is None
    _emit(make_certificate("tree-connectify", G, result.outcome, result.to_dict(), verified, inputs=inputs), out)


@tree_app.command("trichotomy")
def tree_trichotomy(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    d: int = typer.Option(2, "--d", help="Degree of T_d^r"),
    r: int = typer.Option(2, "--r", help="Radius of T_d^r"),
    s: int = typer.Option(2, "--s", help="Side of the biclique K_{s,s}"),
    t: int = typer.Option(DEFAULT_CLIQUE_BOUND, "--t", "-t", help="Size of the clique K_t"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
):
    """
    Find an induced K_{s,s}, a K_t or an induced T_d^r.
    """
    G = read_graph(source, fmt)
    inputs = {"d": d, "r": r, "s": s, "t": t}
    result = kp_trichotomy(G, d, r, s, t)
    if isinstance(result, Inconclusive):
        _inconclusive("tree-trichotomy", G, result, out, inputs)
    if result is None:
        _emit(make_certificate("tree-trichotomy", G, "none", None, verified=True, inputs=inputs), out)
    verified = validate_trichotomy(G, result, d, r, s, t) is None
    _emit(make_certificate("tree-trichotomy", G, result.outcome, result.to_dict(), verified, inputs=inputs), out)


@tree_app.command("pipeline")
def tree_pipeline(
    source: str = typer.Option(..., "--in", "-i", help="Host graph"),
    forest: str = typer.Option(..., "--forest", "-F", help="Forest F"),
    t: int = typer.Option(DEFAULT_CLIQUE_BOUND, "--t", "-t", help="Clique bound"),
    fmt: str = typer.Option(None, "--format", "-f", help="Input format; detected when omitted"),
    out: str = typer.Option("-", "--out", "-o", help="Certificate file, or - for stdout"),
    force: bool = typer.Option(False, "--force", help="Search above the exhaustive caps"),
    use_cache: bool = typer.Option(True, "--cache/--no-cache", help="Reuse exact treewidth results"),
):
    """
    Walk a host in C_t(F) through treewidth, a strong block and tree
    extraction, stopping at the first stage that fails.
    """
    G = read_graph(source, fmt)
    F = read_graph(forest)
    report = forest_pipeline(G, F, t, force=force, cache=_cache(use_cache))
    stopped = report.stopped_at
    outcome = "completed" if stopped is None else f"stopped:{stopped}"
    if stopped:
        presenter.show_status(f"pipeline stopped at {stopped}")
    code = EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK
    _emit(make_certificate("tree-pipeline", G, outcome, report.to_dict(), inputs={"t": t}), out, code)


# =============================================================================
# HARNESS
# =============================================================================

@app.command()
def verify(
    check: str = typer.Option("all", "--check", "-c", help="Registered check id, or 'all'"),
    samples: int = typer.Option(DEFAULT_SAMPLES, "--samples", "-n", help="Instances per check"),
    max_n: int = typer.Option(DEFAULT_MAX_N, "--max-n", help="Largest generated host"),
    seed: int = typer.Option(0, "--seed", "-s", help="Random seed"),
    jobs: int = typer.Option(1, "--jobs", "-j", help="Worker processes"),
    t: int = typer.Option(DEFAULT_CLIQUE_BOUND, "--t", "-t", help="Clique bound for numeric bounds"),
    out: str = typer.Option("-", "--out", "-o", help="Report file (.json or .md), or - for stdout"),
    list_checks: bool = typer.Option(False, "--list", help="List registered checks and exit"),
):
    """
    Run registered checks on seeded random instances.

    A failure on a host that is still a member of the class is a hard fail
    (exit code 1). Identical seeds give identical reports.
    """
    if list_checks:
        for check_id, registered in REGISTRY.items():
            presenter.console.print(f"[cyan]{check_id}[/cyan]  {registered.description}")
        raise typer.Exit(EXIT_OK)

    check_ids = list(REGISTRY) if check == "all" else [check]
    summaries = [run_harness(check_id, samples, max_n, seed, jobs, t) for check_id in check_ids]
    presenter.show_harness(summaries)

    ok = all(summary.ok for summary in summaries)
    witness = {"checks": [summary.to_dict() for summary in summaries], "max_n": max_n, "t": t}
    inputs = {"checks": check_ids, "samples": samples, "max_n": max_n, "t": t}
    cert = make_certificate("verify", None, "pass" if ok else "fail", witness, verified=ok, seed=seed, inputs=inputs)
    _emit(cert, out, EXIT_OK if ok else EXIT_INPUT)


@app.command()
def cache(
    action: str = typer.Argument("stats", help="Action: 'stats' to show statistics, 'clear' to clear cache"),
    yes: bool = typer.Option(False, "--yes", "-y", help="Clear without asking"),
):
    """
    Manage the disk cache of exact treewidth and Ramsey values.
    """
    cache_manager = CacheManager()

    if action == "stats":
        stats = cache_manager.get_stats()
        presenter.console.print("\n[bold blue]Cache Statistics[/bold blue]\n")
        for name in ("treewidth", "ramsey"):
            presenter.console.print(f"[bold]{name.capitalize()} cache:[/bold]")
            presenter.console.print(f"  Hits: {stats[name]['hits']}")
            presenter.console.print(f"  Misses: {stats[name]['misses']}")
        presenter.console.print(f"\n[bold]Total Size:[/bold] {stats['cache_size_mb']} MB ({CACHE_DIR})")

    elif action == "clear":
        if yes or Prompt.ask("Clear the cache?", choices=["yes", "no"], default="no") == "yes":
            cache_manager.clear_all()
            presenter.show_status("Cache cleared.", style="green")
        else:
            presenter.show_status("Cache clear cancelled.")

    else:
        raise GraphInputError(f"Unknown action: {action}. Use 'stats' or 'clear'")

    cache_manager.close()


# =============================================================================
# ENTRY POINT
# =============================================================================

def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and return its exit code instead of exiting.

    Errors are printed in red on stderr and mapped to the exit codes above.
    """
    command = typer.main.get_command(app)
    try:
        code = command.main(args=argv, prog_name=TOOL_NAME, standalone_mode=False)
    except click.exceptions.Abort:
        presenter.show_error("aborted")
        return EXIT_INPUT
    except click.ClickException as e:
        e.show()
        return EXIT_INPUT
    except (GraphInputError, PreconditionError, HypothesisViolation, ObstructionFound) as e:
        presenter.show_error(str(e))
        return EXIT_INPUT
    except (CapExceededError, RejectionBudgetExhausted) as e:
        presenter.show_error(str(e))
        return EXIT_INCONCLUSIVE
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
