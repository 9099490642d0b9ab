"""Shared loaders for the bundled census data."""
from functools import lru_cache

from gamma4.cli import bundled, goeritz_forms, load_knot_table


@lru_cache(maxsize=None)
def table():
    return {r.record.name: r for r in load_knot_table(bundled("knots10.csv"))}


def forms_of(name, mirror=False):
    return goeritz_forms(table()[name], mirror=mirror)[1]


def negative_form(name):
    """Negative definite form of ``name`` (a leading ``-`` means the mirror)."""
    fs = forms_of(name.lstrip("-"), mirror=name.startswith("-"))
    return next(f for f in fs if f is not None and f.definiteness == "negative")
