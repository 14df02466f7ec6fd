from .system import (
    BUILTINS, Identity, IdentityParseError, IdentitySystem, builtin, cyclic, fully_symmetric,
    builtin_system, majority, near_unanimity, parse_identities, parse_identity_system, siggers4, siggers6,
)
from .witness import (
    InternalInconsistency, SearchResult, Verification, WitnessTable, identity_violations,
    polymorphism_violations, search_witness, siggers_from_cyclic, verify_witness,
)

__all__ = [
    "BUILTINS", "Identity", "IdentityParseError", "IdentitySystem", "InternalInconsistency", "SearchResult",
    "Verification", "WitnessTable", "builtin", "builtin_system", "cyclic", "fully_symmetric", "identity_violations",
    "majority", "near_unanimity", "parse_identities", "parse_identity_system", "polymorphism_violations",
    "search_witness", "siggers4", "siggers6", "siggers_from_cyclic", "verify_witness",
]
