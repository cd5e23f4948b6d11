"""Named field presentations used by examples, tests and the CLI."""
from __future__ import annotations

from .tower import NumberFieldTower, build_field

FIELDS: dict[str, list[tuple[str, str]]] = {
    "Q": [],
    "Q(i)": [("i", "x^2+1")],
    "Q(w)": [("w", "x^2+x+1")],
    "Q(sqrt-2)": [("s", "x^2+2")],
    "Q(sqrt2)": [("r", "x^2-2")],
    "Q(2^(1/3))": [("a", "x^3-2")],
    "Q(zeta5)": [("z", "x^4+x^3+x^2+x+1")],
    "Q(sqrt2,i)": [("r", "x^2-2"), ("i", "x^2+1")],
    "Q(i,sqrt(4+i))": [("i", "x^2+1"), ("t", "x^2-(4+i)")],
    "Q(2^(1/3),w)": [("a", "x^3-2"), ("w", "x^2+x+1")],
}

# explicit CM data (F1 as a sub-tower depth, D in F0 = Q) where a field is
# presented over its CM subfield; other fields use the automatic search
CM_DATA: dict[str, tuple[int, int]] = {
    "Q(i)": (1, -1),
    "Q(w)": (1, -3),
    "Q(sqrt-2)": (1, -2),
    "Q(i,sqrt(4+i))": (1, -1),
}


def get_field(name: str) -> NumberFieldTower:
    try:
        return build_field(FIELDS[name])
    except KeyError:
        raise KeyError(f"unknown field {name!r}; known: {', '.join(FIELDS)}") from None


def load_field(arg: str) -> NumberFieldTower:
    """A catalog name, a JSON string or a path to a JSON tower file."""
    import json
    import os

    if arg in FIELDS:
        return get_field(arg)
    if os.path.exists(arg):
        with open(arg) as fh:
            return build_field(json.load(fh))
    return build_field(arg)
