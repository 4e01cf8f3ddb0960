"""Registry of verified q-series identities and congruences."""

from .core import (
    FAIL,
    KNOWN_FALSE,
    PASS,
    REGISTRY,
    Identity,
    Specialization,
    VerificationReport,
    lookup,
    parse_monomial,
    perturb,
    verify,
    verify_record,
)
from . import transforms, pbar, spt, mod5  # noqa: F401
from .transforms import verify_ext, verify_extvar
from .pbar import verify_andsim_by_interpolation
from .mod5 import verify_mod5_lemma, verify_remark_k_param


def catalog(include_known_false: bool = False) -> list[dict]:
    """Metadata of every registered identity, sorted by group then id."""
    records = list(REGISTRY.values())
    if include_known_false:
        records += list(KNOWN_FALSE.values())
    out = []
    for r in records:
        meta = r.metadata()
        meta["known_false"] = r.id in KNOWN_FALSE
        out.append(meta)
    return sorted(out, key=lambda m: (m["group"], m["id"]))


__all__ = ["FAIL", "PASS", "KNOWN_FALSE", "REGISTRY", "Identity", "Specialization", "VerificationReport",
           "catalog", "lookup", "parse_monomial", "perturb", "verify", "verify_record", "verify_ext",
           "verify_extvar", "verify_andsim_by_interpolation", "verify_mod5_lemma", "verify_remark_k_param"]
