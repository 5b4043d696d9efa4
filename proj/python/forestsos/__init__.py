"""Spanning-forest Rayleigh differences and sum-of-squares certificates."""

from ._forestsos import (
    Error,
    Graph,
    InvalidArgument,
    ParseError,
    check_identities,
    construct_delta,
    construct_phi,
    delta,
    forest_poly,
    k33_report,
    phi,
    run_command,
    sample_nonnegativity,
    sign_search,
    sp_decompose,
    tree_poly,
    verify_certificate,
)

__all__ = [
    "Error",
    "Graph",
    "InvalidArgument",
    "ParseError",
    "check_identities",
    "construct_delta",
    "construct_phi",
    "delta",
    "forest_poly",
    "k33_report",
    "phi",
    "run_command",
    "sample_nonnegativity",
    "sign_search",
    "sp_decompose",
    "tree_poly",
    "verify_certificate",
]
