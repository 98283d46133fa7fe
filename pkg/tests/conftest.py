"""Shared test helpers: a small structural JSON Schema checker (enough for
the shipped report schema) and a brute-force reference countermodel search
that bypasses the packed kernel entirely."""

from __future__ import annotations

import json
import re
from importlib import resources

from apodeixis import semantics
from apodeixis.model_core import EnumerationBounds, enumerate_models
from apodeixis.catalog import Inference


def load_report_schema() -> dict:
    text = resources.files("apodeixis").joinpath("report_schema.json").read_text()
    return json.loads(text)


class SchemaError(AssertionError):
    pass


def _resolve(ref: str, root: dict) -> dict:
    node = root
    for part in ref.removeprefix("#/").split("/"):
        node = node[part]
    return node


def check_schema(instance, schema: dict, root: dict | None = None, path: str = "$"):
    """Validate the subset of JSON Schema the shipped file uses; raises
    SchemaError with a path on the first violation."""
    root = root if root is not None else schema
    if "$ref" in schema:
        check_schema(instance, _resolve(schema["$ref"], root), root, path)
        return
    if "oneOf" in schema:
        errors = []
        hits = 0
        for sub in schema["oneOf"]:
            try:
                check_schema(instance, sub, root, path)
                hits += 1
            except SchemaError as exc:
                errors.append(str(exc))
        if hits != 1:
            raise SchemaError(f"{path}: matched {hits} oneOf branches ({errors})")
        return
    if "enum" in schema:
        if instance not in schema["enum"]:
            raise SchemaError(f"{path}: {instance!r} not in {schema['enum']}")
        return
    kind = schema.get("type")
    if kind == "object":
        if not isinstance(instance, dict):
            raise SchemaError(f"{path}: expected object, got {type(instance).__name__}")
        for key in schema.get("required", ()):
            if key not in instance:
                raise SchemaError(f"{path}: missing required key {key!r}")
        props = schema.get("properties", {})
        patterns = schema.get("patternProperties", {})
        for key, value in instance.items():
            if key in props:
                check_schema(value, props[key], root, f"{path}.{key}")
                continue
            pattern = next((p for p in patterns if re.match(p, key)), None)
            if pattern is not None:
                check_schema(value, patterns[pattern], root, f"{path}.{key}")
                continue
            if schema.get("additionalProperties") is False:
                raise SchemaError(f"{path}: unexpected key {key!r}")
    elif kind == "array":
        if not isinstance(instance, list):
            raise SchemaError(f"{path}: expected array, got {type(instance).__name__}")
        if len(instance) < schema.get("minItems", 0):
            raise SchemaError(f"{path}: fewer than {schema['minItems']} items")
        for i, item in enumerate(instance):
            check_schema(item, schema.get("items", {}), root, f"{path}[{i}]")
    elif kind == "integer":
        if not isinstance(instance, int) or isinstance(instance, bool):
            raise SchemaError(f"{path}: expected integer, got {instance!r}")
        if "minimum" in schema and instance < schema["minimum"]:
            raise SchemaError(f"{path}: {instance} below minimum {schema['minimum']}")
    elif kind == "string":
        if not isinstance(instance, str):
            raise SchemaError(f"{path}: expected string, got {instance!r}")
        if "pattern" in schema and not re.match(schema["pattern"], instance):
            raise SchemaError(f"{path}: {instance!r} fails pattern {schema['pattern']}")
    elif kind == "null":
        if instance is not None:
            raise SchemaError(f"{path}: expected null, got {instance!r}")
    elif kind is not None:
        raise SchemaError(f"{path}: unhandled schema type {kind!r}")


def brute_least_countermodel(inf: Inference, b: EnumerationBounds, extra=()):
    """Reference search: scan the enumeration in rank order with the plain
    quantifier-expansion evaluator; first hit is the canonical least."""
    for rank, model in enumerate(enumerate_models(b)):
        ok = all(semantics.holds(model, p) for p in inf.premises)
        ok = ok and all(
            semantics.realized_nonempty(model, c) for c in inf.side_conditions
        )
        ok = ok and not semantics.holds(model, inf.conclusion)
        for item, want in extra:
            if not ok:
                break
            kind = item[0]
            if kind == "stmt":
                ok = semantics.holds(model, item[1]) == want
            elif kind == "nonempty":
                ok = semantics.realized_nonempty(model, item[1]) == want
            else:
                ok = semantics.exists_necessarily_both(model, item[1], item[2]) == want
        if ok:
            return rank, model
    return None
