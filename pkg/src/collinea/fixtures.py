"""Accessors for the bundled order-9 plane fixtures.

Ten data files ship with the package: the three non-Desarguesian projective
planes of order 9 (Hall, its transpose, Hughes) and the seven affine planes
of that order (AG(2,9) plus six line deletions with documented choices).
Provenance strings inside each file describe the construction and the
certification run; see tools/make_fixtures.py for the generator.

Searches over the affine fixtures should use the distinguished class pair
(0, 1) noted in their provenance: the minimum is not independent of that
choice on the non-Desarguesian planes.
"""

from importlib import resources

from .plane import load_plane

PROJECTIVE_FIXTURES = (
    "hall_projective",
    "dual_hall_projective",
    "hughes_projective",
)

AFFINE_FIXTURES = (
    "ag_2_9",
    "hall_translation_deleted",
    "hall_nontranslation_deleted",
    "dual_hall_special_deleted",
    "dual_hall_generic_deleted",
    "hughes_real_deleted",
    "hughes_generic_deleted",
)

# the one affine fixture whose minimum (at the pinned classes) is 5, not 4
EXCEPTIONAL_FIXTURE = "hall_translation_deleted"

DISTINGUISHED_CLASSES = (0, 1)


def fixture_names():
    return PROJECTIVE_FIXTURES + AFFINE_FIXTURES


def fixture_bytes(name):
    if name not in fixture_names():
        raise KeyError(f"no bundled fixture named {name!r}")
    return resources.files("collinea.data").joinpath(name + ".json").read_bytes()


def load_fixture(name):
    """Load and validate a bundled plane by name (no .json suffix)."""
    return load_plane(fixture_bytes(name))
