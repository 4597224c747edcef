"""JSONL report envelopes and their schemas.

Every line written by the command-line tool is one envelope::

    {"version", "config", "timestamp", "elapsed", "payload", "summary"}

The payload carries a ``record`` tag naming its schema in ``schemas/``.
Serialisation is canonical (sorted keys, no whitespace), so two runs with the
same configuration differ only in ``timestamp`` and ``elapsed``.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from functools import lru_cache
from importlib import resources

from jsonschema import Draft202012Validator

from excmaps import __version__
from excmaps.algebra.fields import format_element

VOLATILE_FIELDS = ("timestamp", "elapsed")


@lru_cache(maxsize=None)
def validator(name):
    text = resources.files("excmaps").joinpath("schemas", f"{name}.json").read_text()
    return Draft202012Validator(json.loads(text))


def validate_envelope(env):
    """Raise jsonschema.ValidationError unless env and its payload match their schemas."""
    validator("envelope").validate(env)
    validator(env["payload"]["record"]).validate(env["payload"])


def envelope(config, payload, summary, elapsed=0.0):
    env = {
        "version": __version__,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "elapsed": round(float(elapsed), 6),
        "payload": payload,
        "summary": summary,
    }
    validate_envelope(env)
    return env


def dumps(env):
    return json.dumps(env, sort_keys=True, separators=(",", ":"))


def strip_volatile(env):
    return {k: v for k, v in env.items() if k not in VOLATILE_FIELDS}


# -- payload builders -----------------------------------------------------------------------


def point_str(P):
    return "inf" if P.is_infinity else format_element(P.value)


def verdict_fields(f, verdict):
    from excmaps.algebra.parse import format_map

    col = getattr(verdict, "collision", None)
    return {
        "map": format_map(f),
        "q": f.field.q,
        "verdict": verdict.kind,
        "scanned_k": list(verdict.scanned_k),
        "degree": verdict.degree,
        "window": verdict.window,
        "witness_k": getattr(verdict, "witness_k", None),
        "collision": None if col is None else {"a": point_str(col.a), "b": point_str(col.b), "k": col.k},
        "basis": getattr(verdict, "basis", None),
    }


def profile_rows(report):
    return [
        {"point": point_str(P), "e": e, "gcd": g} for (P, e), g in zip(report.profile, report.gcds)
    ]
