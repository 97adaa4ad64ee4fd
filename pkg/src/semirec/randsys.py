"""Seeded random systems for property checks.

Systems are generated as JSON documents and loaded through ``files``, so
every random system can be written out and replayed. Entries come from a
small pool per semiring (zero, one and two small elements) to hit
annihilation and identity cases often.
"""

from __future__ import annotations

import random

from .files import composition_from_json, system_from_json
from .recurrence import ComposedSystem, RecurrenceSystem

POOLS = {
    "natural": ["0", "1", "2", "3"],
    "integer": ["0", "1", "-1", "2"],
    "boolean": ["0", "1"],
    "tropical_min_plus": ["inf", "0", "1", "2"],
    "max_plus": ["-inf", "0", "1", "2"],
}


def _literal(rng: random.Random, semiring: str) -> str:
    return rng.choice(POOLS[semiring])


def random_polynomial(rng: random.Random, semiring: str) -> str:
    a, b = rng.randint(0, 2), rng.randint(0, 3)
    shape = rng.randrange(4)
    if shape == 0:
        return f"{a}*n+{b}"
    if shape == 1:
        return f"n+{b}"
    if shape == 2:
        return f"(n+{b})*{a}"
    if semiring == "integer":
        return f"{b}-{a}*n"
    return f"n*n+{b}"


def random_seq_spec(rng: random.Random, semiring: str):
    """A constant, table or (where the carrier allows it) polynomial spec."""
    choices = ["constant", "table"]
    if semiring != "boolean":
        choices.append("polynomial")
    form = rng.choice(choices)
    if form == "constant":
        return {"constant": _literal(rng, semiring)}
    if form == "polynomial":
        return random_polynomial(rng, semiring)
    length = rng.randint(1, 5)
    return {
        "table": [[i, _literal(rng, semiring)] for i in range(length)],
        "tail": rng.choice(["repeat", "zero"]),
    }


def random_coefficients(rng: random.Random, semiring: str, k: int, variable: bool) -> dict:
    if variable:
        return {"variable": [[random_seq_spec(rng, semiring) for _ in range(k)]
                             for _ in range(k)]}
    return {"constant": [[_literal(rng, semiring) for _ in range(k)] for _ in range(k)]}


def random_system_doc(rng: random.Random, semiring: str, k: int | None = None,
                      variable: bool = False, zero_initial: bool = True) -> dict:
    k = k or rng.randint(1, 3)
    zero = POOLS[semiring][0]
    return {
        "format": 1,
        "semiring": semiring,
        "k": k,
        "coefficients": random_coefficients(rng, semiring, k, variable),
        "input": [random_seq_spec(rng, semiring) for _ in range(k)],
        "initial": [zero if zero_initial else _literal(rng, semiring) for _ in range(k)],
    }


def random_composition_doc(rng: random.Random, semiring: str, k: int | None = None,
                           variable: bool = False) -> dict:
    k = k or rng.randint(1, 3)
    zero = POOLS[semiring][0]
    return {
        "format": 1,
        "semiring": semiring,
        "k": k,
        "outer": random_coefficients(rng, semiring, k, variable),
        "inner": random_coefficients(rng, semiring, k, variable),
        "input_h": [random_seq_spec(rng, semiring) for _ in range(k)],
        "initial_f": [zero] * k,
        "initial_g": [zero] * k,
    }


def random_system(rng: random.Random, semiring: str, k: int | None = None,
                  variable: bool = False, zero_initial: bool = True) -> RecurrenceSystem:
    return system_from_json(random_system_doc(rng, semiring, k, variable, zero_initial))


def random_composition(rng: random.Random, semiring: str, k: int | None = None,
                       variable: bool = False) -> ComposedSystem:
    return composition_from_json(random_composition_doc(rng, semiring, k, variable))


def random_for_theorem(rng: random.Random, semiring: str, which: int, k: int | None = None):
    """A random system of the kind a theorem applies to (1..4)."""
    variable = which in (2, 4)
    if which in (1, 2):
        return random_system(rng, semiring, k, variable)
    return random_composition(rng, semiring, k, variable)
