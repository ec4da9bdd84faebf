"""JSON Schemas for everything the CLI prints."""

_group = {
    "type": "object",
    "required": ["free_rank", "torsion"],
    "properties": {
        "free_rank": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
    "additionalProperties": False,
}

_int_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

LATTICE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "IdealLattice",
    "type": "object",
    "required": ["elements", "hasse", "flags"],
    "properties": {
        "elements": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
        "hasse": {"type": "array",
                  "items": {"type": "array", "items": {"type": "integer", "minimum": 0},
                            "minItems": 2, "maxItems": 2}},
        "flags": {"type": "object", "required": ["conditionK"],
                  "properties": {"conditionK": {"type": "boolean"}}},
    },
}

KWEB = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "KWeb",
    "type": "object",
    "required": ["vertices", "lattice", "groups", "sequences", "metadata"],
    "properties": {
        "vertices": {"type": "array", "items": {"type": "string"}},
        "lattice": LATTICE,
        "groups": {
            "type": "object",
            "propertyNames": {"pattern": r"^\{[^|]*\}\|\{[^|]*\}$"},
            "additionalProperties": {
                "type": "object",
                "required": ["k0", "k1", "unit_class", "vertex_classes"],
                "properties": {
                    "k0": _group,
                    "k1": _group,
                    "unit_class": {"type": "array", "items": {"type": "integer"}},
                    "vertex_classes": {"type": "object",
                                       "additionalProperties": {"type": "array",
                                                                "items": {"type": "integer"}}},
                },
            },
        },
        "sequences": {
            "type": "object",
            "propertyNames": {"pattern": r"^\{[^|]*\}\|\{[^|]*\}\|\{[^|]*\}$"},
            "additionalProperties": {
                "type": "object",
                "required": ["iota0", "pi0", "delta0", "iota1", "pi1", "delta1"],
                "additionalProperties": _int_matrix,
            },
        },
        "metadata": {
            "type": "object",
            "required": ["conditionK", "rowFinite", "amplified", "conventionVerified"],
            "additionalProperties": {"type": "boolean"},
        },
    },
}

VERDICT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Verdict",
    "type": "object",
    "required": ["category"],
    "properties": {
        "category": {"enum": ["Distinguished", "Consistent", "AmplifiedIsomorphic",
                              "AmplifiedNonIsomorphic"]},
        "witness": {"type": "string"},
        "lattice_map": {"type": "array"},
        "per_pair_factors_match": {"type": "boolean"},
        "unit_matched": {"type": "boolean"},
        "vertex_bijection": {"type": "object", "additionalProperties": {"type": "string"}},
        "naturality_verified": {"type": "boolean"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

CLASSIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "AmplifiedClassification",
    "type": "object",
    "required": ["isomorphic", "witness", "canonical_forms", "classifies"],
    "properties": {
        "isomorphic": {"type": "boolean"},
        "witness": {"type": ["array", "null"],
                    "items": {"type": "array", "items": {"type": "string"},
                              "minItems": 2, "maxItems": 2}},
        "canonical_forms": {"type": "array", "items": {"type": "string"},
                            "minItems": 2, "maxItems": 2},
        "classifies": {"type": "string"},
    },
}

VALIDATE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "GraphReport",
    "type": "object",
    "required": ["vertices", "edges", "sinks", "infinite_emitters", "row_finite",
                 "amplified", "condition_K"],
    "properties": {
        "vertices": {"type": "integer", "minimum": 0},
        "edges": {"type": ["integer", "string"]},
        "sinks": {"type": "array", "items": {"type": "string"}},
        "infinite_emitters": {"type": "array", "items": {"type": "string"}},
        "row_finite": {"type": "boolean"},
        "amplified": {"type": "boolean"},
        "condition_K": {"type": "boolean"},
    },
}

ALL = {"lattice": LATTICE, "kweb": KWEB, "verdict": VERDICT, "classify": CLASSIFY,
       "validate": VALIDATE}
