"""
FocalFront - Fixture Registry

Named example surfaces: the four worked examples with known focal
singularities, the five front normal forms, and a few synthetic charts
that exercise the degenerate branches.
"""

from dataclasses import dataclass
from functools import lru_cache

from focalfront.errors import UnknownFixture
from focalfront.geometry.classify import SingularityClass
from focalfront.geometry.focal import FocalClass
from focalfront.geometry.polynomials import SurfaceSpec


@dataclass(frozen=True)
class FixtureEntry:
    components: tuple[str, str, str]
    description: str
    point: tuple[str, str] = ("0", "0")
    expected_class: SingularityClass | None = None
    expected_focal_class: FocalClass | None = None
    expected_contact_order: int | None = None


FIXTURES: dict[str, FixtureEntry] = {
    # Worked examples, all in adapted coordinates at the origin
    "sw-ce": FixtureEntry(
        ("u^2/2 - v", "-u^3/3 + u*v", "-u^4/8 + u^2*v/2"),
        "swallowtail whose focal surface has a cuspidal edge",
        expected_class=SingularityClass.SWALLOWTAIL,
        expected_focal_class=FocalClass.CUSPIDAL_EDGE,
        expected_contact_order=1,
    ),
    "cbf-sw": FixtureEntry(
        (
            "(u^3 - 6*v)/6",
            "-u^4/8 - u^3/6 + u*v + v",
            "(-5*u^6 - 18*u^5 + 60*u^3*v + 180*u^2*v - 180*v^2)/360",
        ),
        "cuspidal butterfly whose focal surface has a swallowtail",
        expected_class=SingularityClass.CUSPIDAL_BUTTERFLY,
        expected_focal_class=FocalClass.SWALLOWTAIL,
        expected_contact_order=2,
    ),
    "cbf-cbk": FixtureEntry(
        (
            "(u^3 - 6*v)/6",
            "(u^6 - 9*u^4 - 12*u^3*v + 72*u*v + 36*v^2)/72",
            "-u^2*(u^3 - 10*v)/20",
        ),
        "cuspidal butterfly whose focal surface has cuspidal beaks",
        expected_class=SingularityClass.CUSPIDAL_BUTTERFLY,
        expected_focal_class=FocalClass.CUSPIDAL_BEAKS,
    ),
    "cbf-clp": FixtureEntry(
        (
            "(u^3 - 6*v)/6",
            "(-u^6 - 9*u^4 + 12*u^3*v + 72*u*v - 36*v^2)/72",
            "-u^2*(u^3 - 10*v)/20",
        ),
        "cuspidal butterfly whose focal surface has cuspidal lips",
        expected_class=SingularityClass.CUSPIDAL_BUTTERFLY,
        expected_focal_class=FocalClass.CUSPIDAL_LIPS,
    ),
    # Normal forms
    "cuspidal-edge": FixtureEntry(
        ("u", "v^2", "v^3"),
        "cuspidal edge normal form",
        expected_class=SingularityClass.CUSPIDAL_EDGE,
    ),
    "swallowtail": FixtureEntry(
        ("u", "4*v^3 + 2*u*v", "3*v^4 + u*v^2"),
        "swallowtail normal form",
        expected_class=SingularityClass.SWALLOWTAIL,
    ),
    "cuspidal-butterfly": FixtureEntry(
        ("u", "5*v^4 + 2*u*v", "4*v^5 + u*v^2"),
        "cuspidal butterfly normal form",
        expected_class=SingularityClass.CUSPIDAL_BUTTERFLY,
    ),
    "cuspidal-lips": FixtureEntry(
        ("u", "3*v^4 + 2*u^2*v^2", "v^3 + u^2*v"),
        "cuspidal lips normal form",
        expected_class=SingularityClass.CUSPIDAL_LIPS,
    ),
    "cuspidal-beaks": FixtureEntry(
        ("u", "3*v^4 - 2*u^2*v^2", "v^3 - u^2*v"),
        "cuspidal beaks normal form",
        expected_class=SingularityClass.CUSPIDAL_BEAKS,
    ),
    # Synthetic charts
    "plane": FixtureEntry(
        ("u", "v", "0"),
        "flat plane, regular everywhere",
        expected_class=SingularityClass.REGULAR,
    ),
    "paraboloid": FixtureEntry(
        ("u", "v", "u^2/2 + v^2"),
        "elliptic paraboloid with distinct principal curvatures 1 and 2 at the vertex",
        expected_class=SingularityClass.REGULAR,
    ),
    "frontal-fold": FixtureEntry(
        ("u", "v^2", "0"),
        "planar fold: a frontal with constant normal, not a front",
        expected_class=SingularityClass.NON_FRONT,
    ),
    "planar-fold": FixtureEntry(
        ("3*u^2/2 - v", "u*v - u^3", "0"),
        "planar map with a second-kind singular point on the u-axis; not a front",
        expected_class=SingularityClass.NON_FRONT,
    ),
    "non-admissible": FixtureEntry(
        ("v", "u*v", "u^2*v"),
        "null direction tangent to the whole singular curve (e = 0)",
        expected_class=SingularityClass.UNRESOLVED,
    ),
}


def list_fixtures() -> list[str]:
    return sorted(FIXTURES)


def fixture_entry(name: str) -> FixtureEntry:
    try:
        return FIXTURES[name]
    except KeyError:
        raise UnknownFixture(
            f"no fixture named {name!r}; known: {', '.join(list_fixtures())}", "get_fixture"
        ) from None


@lru_cache(maxsize=None)
def get_fixture(name: str) -> SurfaceSpec:
    """
    Build the registered surface.

    Raises:
        UnknownFixture: name is not registered.
    """
    entry = fixture_entry(name)
    return SurfaceSpec.from_expressions(
        [e.replace("^", "**") for e in entry.components],
        point=entry.point,
        name=name,
        description=entry.description,
    )
