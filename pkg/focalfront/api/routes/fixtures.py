"""
FocalFront - Fixture Routes

Browse the registered example surfaces.
"""

from fastapi import APIRouter, HTTPException, status

from focalfront.errors import UnknownFixture
from focalfront.models import FixtureDetail, FixtureSummary
from focalfront.services.fixtures import fixture_entry, get_fixture, list_fixtures
from focalfront.services.specfile import format_surface_spec


router = APIRouter()


@router.get("/", response_model=list[FixtureSummary])
async def get_fixtures():
    """List every registered fixture."""
    return [
        FixtureSummary(name=name, description=entry.description, point=entry.point)
        for name, entry in ((name, fixture_entry(name)) for name in list_fixtures())
    ]


@router.get("/{name}", response_model=FixtureDetail)
async def get_fixture_detail(name: str):
    """A fixture with its spec text and expected verdicts."""
    try:
        entry = fixture_entry(name)
        spec = get_fixture(name)
    except UnknownFixture as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))

    return FixtureDetail(
        name=name,
        description=entry.description,
        point=entry.point,
        spec=format_surface_spec(spec),
        components=entry.components,
        expected_class=entry.expected_class,
        expected_focal_class=entry.expected_focal_class,
        expected_contact_order=entry.expected_contact_order,
    )
