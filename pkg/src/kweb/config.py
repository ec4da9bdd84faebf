from __future__ import annotations

import os
from dataclasses import dataclass, replace

OUTPUT_FORMATS = ("json", "dot", "text")


@dataclass(frozen=True)
class Config:
    """Search bounds and switches shared by the library entry points and CLI.

    ``iso_search_bound`` caps the vertex count for exhaustive permutation
    search (canonical forms, digraph isomorphism).  ``lattice_iso_budget``
    and ``unit_search_budget`` cap the number of lattice isomorphisms and
    torsion automorphisms tried by the comparator.
    """

    max_vertices: int = 12
    lattice_enum_bound: int = 20
    iso_search_bound: int = 10
    positivity_search_bound: int = 1000
    lattice_iso_budget: int = 10_000
    unit_search_budget: int = 100_000
    strict_condition_k: bool = False
    output: str = "json"

    def __post_init__(self):
        for name in ("max_vertices", "lattice_enum_bound", "iso_search_bound",
                     "positivity_search_bound", "lattice_iso_budget", "unit_search_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.output not in OUTPUT_FORMATS:
            raise ValueError(f"output must be one of {OUTPUT_FORMATS}")

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        cfg = cls()
        env = os.environ.get("KWEB_MAX_VERTICES")
        if env:
            cfg = replace(cfg, max_vertices=int(env))
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(cfg, **overrides)


DEFAULT = Config()
