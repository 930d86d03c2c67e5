"""JSON helpers: canonical encoding and element parsing against a context."""

from __future__ import annotations

import json

from .hecke import HeckeAlgebra, HeckeElt
from .propweyl import ProPElt
from .topmod import TopElt, TopModule


def canonical_json(obj) -> str:
    """Deterministic bytes for a JSON-able object."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def hecke_elt_from_json(algebra: HeckeAlgebra, data) -> HeckeElt:
    terms = {}
    for item in data["terms"]:
        g = ProPElt.from_json(algebra.group, item["elt"])
        c = algebra.field.elt(item["coeff"])
        terms[g] = terms[g] + c if g in terms else c
    return HeckeElt(algebra, terms)


def top_elt_from_json(module: TopModule, data) -> TopElt:
    if data.get("basis", "phi") != "phi":
        raise ValueError("top-module elements use the phi basis")
    terms = {}
    for item in data["terms"]:
        g = ProPElt.from_json(module.group, item["elt"])
        c = module.field.elt(item["coeff"])
        terms[g] = terms[g] + c if g in terms else c
    return TopElt(module, terms)


def propelt_from_json(group, data) -> ProPElt:
    return ProPElt.from_json(group, data)
