"""
Configuration constants for thetaprism.

This file contains all the tunable parameters that bound the exhaustive
searches, the sampling harness, caching and certificate output. Caps can be
overridden from the environment (or a local .env file) with the
THETAPRISM_ prefix, e.g. THETAPRISM_THETA_CAP=16.
"""

import os

from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    """Read an integer override from the environment."""
    raw = os.getenv(f"THETAPRISM_{name}")
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Invalid integer for THETAPRISM_{name}: {raw!r}")


# =============================================================================
# Tool Identity
# =============================================================================

TOOL_NAME = "thetaprism"
TOOL_VERSION = "0.4.0"
CERTIFICATE_SCHEMA = "v1"        # Bumped only on incompatible JSON changes

# =============================================================================
# Exhaustive Search Caps
# =============================================================================
# Above a cap the search refuses (exit code 2) unless --force is given.

TREEWIDTH_EXACT_CAP = _env_int("TREEWIDTH_CAP", 30)       # Exact tw up to this many vertices
THETA_CAP = _env_int("THETA_CAP", 14)                     # find_theta vertex cap
PYRAMID_CAP = _env_int("PYRAMID_CAP", 14)                 # find_pyramid vertex cap
PRISM_CAP = _env_int("PRISM_CAP", 16)                     # find_prism vertex cap
RANDOM_GRAPH_CAP = _env_int("RANDOM_GRAPH_CAP", 30)       # random_class_graph size cap
INDUCED_PATTERN_CAP = _env_int("INDUCED_PATTERN_CAP", 10)  # contains_induced |H| cap (forests exempt)
CLEAN_SEARCH_CAP = _env_int("CLEAN_SEARCH_CAP", 14)       # full t-clean search outside the class
OBSTRUCTION_EXTRACT_CAP = _env_int("OBSTRUCTION_EXTRACT_CAP", 18)  # theta/prism extraction after a failed case analysis

STRONG_BLOCK_MAX_K = 4           # find_strong_block: k cap
STRONG_BLOCK_MAX_N = 20          # find_strong_block: vertex cap
STRONG_BLOCK_PATH_CUTOFF = _env_int("STRONG_BLOCK_PATH_CUTOFF", 6)  # Longest path tried (edges)
STRONG_BLOCK_BUDGET = _env_int("STRONG_BLOCK_BUDGET", 200_000)      # Search nodes before giving up

CONNECTIFY_MAX_N = 20            # connectify: vertex cap
CONNECTIFY_MAX_H = 4             # connectify: h cap
CONNECTIFY_BUDGET = _env_int("CONNECTIFY_BUDGET", 200_000)  # Connected sets examined

TOURNAMENT_MAX_P = 8             # transitive_subtournament: p cap
TRICHOTOMY_MAX_N = 20            # clique / biclique / tree search cap
RAMSEY_SAT_MAX_N = _env_int("RAMSEY_SAT_MAX_N", 14)  # Largest n handed to the SAT solver for R(a,b) > n

# =============================================================================
# Sampling
# =============================================================================

RANDOM_EDGE_DENSITY = 2.0        # Proposal density is this / n
REJECTION_BUDGET = _env_int("REJECTION_BUDGET", 500)  # Candidates drawn before giving up
SATURATION_DECORATIONS = 8       # Max decoration vertices on harness strips

# =============================================================================
# Verification Harness
# =============================================================================

DEFAULT_SAMPLES = 200            # Instances per registered check
DEFAULT_MAX_N = 13               # Largest host generated by the harness
DEFAULT_CLIQUE_BOUND = 3         # t used for the numeric bounds in the harness
EXHAUSTIVE_MAX_N = _env_int("EXHAUSTIVE_MAX_N", 11)  # Pyramid checks enumerate every host up to this size first
EXHAUSTIVE_PATH_SIZE = 2         # Longest outside path enumerated by pyramid-path

# =============================================================================
# Caching
# =============================================================================

CACHE_DIR = os.getenv("THETAPRISM_CACHE_DIR", ".cache")
TREEWIDTH_CACHE_TTL_DAYS = 30    # Exact treewidth never changes; TTL only bounds disk use
RAMSEY_CACHE_TTL_DAYS = 365      # Exhaustive Ramsey values
