"""Focused meta-search crawler: ranking, exploration simulator, wrappers and feedback."""

import sys

from ._core import (
    DomainError,
    LookupError,
    MigrationError,
    ParseError,
    RankParams,
    Webgraph,
    combined_score,
    crawl_directory,
    exists_promising_path,
    explore_revisit,
    explore_single_visit,
    extract_urls,
    generate_locality_graph,
    linked_pair_correlation,
    load_graph,
    metrics_saving,
    normalize_session,
    rank,
    run_cli,
    sim,
    suggest,
    tokenize,
)

__all__ = [
    "DomainError",
    "LookupError",
    "MigrationError",
    "ParseError",
    "RankParams",
    "Webgraph",
    "combined_score",
    "crawl_directory",
    "exists_promising_path",
    "explore_revisit",
    "explore_single_visit",
    "extract_urls",
    "generate_locality_graph",
    "linked_pair_correlation",
    "load_graph",
    "main",
    "metrics_saving",
    "normalize_session",
    "rank",
    "run_cli",
    "sim",
    "suggest",
    "tokenize",
]


def main() -> int:
    """Entry point mirroring the `hcrawl` executable."""
    code, out, err = run_cli(sys.argv[1:])
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
