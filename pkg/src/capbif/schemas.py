"""JSON schemas for every machine-readable surface the package emits.

These are the wire contracts: ring elements, representations, spectrum
records and cache files, index reports, certificates.  The test suite
validates emitted documents against them with jsonschema; runtime code
only needs the dicts.
"""

from __future__ import annotations

EULER_ELEMENT_SCHEMA = {
    "type": "object",
    "required": ["coeffs"],
    "additionalProperties": False,
    "properties": {
        "coeffs": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer", "minimum": 0},
                    {"type": "string", "pattern": "^-?[0-9]+$"},
                ],
                "minItems": 2,
                "maxItems": 2,
            },
        }
    },
}

SO2REP_SCHEMA = {
    "type": "object",
    "required": ["weights"],
    "additionalProperties": False,
    "properties": {
        "weights": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer", "minimum": 0},
                    {"type": "integer", "minimum": 1},
                ],
                "minItems": 2,
                "maxItems": 2,
            },
        }
    },
}

EIGENVALUE_RECORD_SCHEMA = {
    "type": "object",
    "required": ["lambda", "exact", "gamma_set", "eigenspace", "mu", "nu"],
    "additionalProperties": False,
    "properties": {
        "lambda": {"type": "number"},
        "exact": {"type": "boolean"},
        "gamma_set": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "eigenspace": SO2REP_SCHEMA,
        "mu": {"type": "integer", "minimum": 1},
        "nu": {"type": "integer", "minimum": 1},
    },
}

SPECTRUM_FILE_SCHEMA = {
    "type": "object",
    "required": ["n", "gamma", "lambda_max", "tolerances", "records"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "gamma": {
            "anyOf": [{"type": "number"}, {"const": "hemisphere"}],
        },
        "lambda_max": {"type": "number"},
        "tolerances": {"type": "object"},
        "records": {"type": "array", "items": EIGENVALUE_RECORD_SCHEMA},
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["n", "gamma", "p_minus", "p_plus"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "gamma": {"anyOf": [{"type": "number"}, {"const": "hemisphere"}]},
        "p_minus": {"type": "integer", "minimum": 0},
        "p_plus": {"type": "integer", "minimum": 0},
    },
}

EVIDENCE_ENTRY_SCHEMA = {
    "type": "object",
    "required": ["lambda_signed", "m0", "index"],
    "additionalProperties": False,
    "properties": {
        "lambda_signed": {"type": "number"},
        "m0": {"type": "integer", "minimum": 1},
        "index": EULER_ELEMENT_SCHEMA,
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": [
        "kind",
        "config",
        "subject",
        "evidence",
        "sum",
        "verdict",
        "details",
        "tolerances",
        "tool_version",
    ],
    "additionalProperties": False,
    "properties": {
        "kind": {
            "enum": [
                "unbounded",
                "necessary_conditions",
                "symmetry_breaking",
                "alternative_sum",
            ]
        },
        "config": CONFIG_SCHEMA,
        "subject": {
            "anyOf": [
                {"type": "number"},
                {"type": "array", "items": {"type": "number"}},
            ]
        },
        "evidence": {"type": "array", "items": EVIDENCE_ENTRY_SCHEMA},
        "sum": {"anyOf": [EULER_ELEMENT_SCHEMA, {"type": "null"}]},
        "verdict": {
            "enum": ["proved", "refuted", "hypothesis_not_met", "inconclusive"]
        },
        "details": {"type": "object"},
        "tolerances": {"type": "object"},
        "tool_version": {"type": "string"},
    },
}

INDEX_REPORT_SCHEMA = {
    "type": "object",
    "required": ["request", "index", "cone", "closed_form", "closed_form_check"],
    "additionalProperties": True,
    "properties": {
        "request": {
            "type": "object",
            "required": ["m0", "sign", "p_minus", "p_plus", "subject"],
            "properties": {
                "m0": {"type": "integer", "minimum": 1},
                "sign": {"enum": ["positive", "negative"]},
                "p_minus": {"type": "integer", "minimum": 0},
                "p_plus": {"type": "integer", "minimum": 0},
                "subject": {"type": "number"},
            },
        },
        "index": EULER_ELEMENT_SCHEMA,
        "cone": {"type": "object"},
        "closed_form": {"type": "object"},
        "closed_form_check": {"enum": ["pass", "fail", "skipped"]},
    },
}
