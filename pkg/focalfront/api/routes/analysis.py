"""
FocalFront - Analysis Routes

Run a report on a posted surface or a registered fixture.
"""

from fractions import Fraction

from fastapi import APIRouter, HTTPException, status
from fastapi.responses import JSONResponse

from focalfront.errors import FocalFrontError, UnknownFixture
from focalfront.models import AnalysisPayload
from focalfront.services.fixtures import get_fixture
from focalfront.services.reports import AnalysisRequest, report_payload, run_report
from focalfront.services.specfile import parse_surface_spec


router = APIRouter()


def _request(payload: AnalysisPayload) -> AnalysisRequest:
    surface = get_fixture(payload.fixture) if payload.fixture else parse_surface_spec(payload.spec)
    point = (Fraction(payload.point[0]), Fraction(payload.point[1])) if payload.point else None
    return AnalysisRequest(
        surface=surface,
        point=point,
        jet_order=payload.order,
        eps_zero=payload.eps_zero,
        eps_div=payload.eps_div,
        outputs=frozenset(payload.outputs),
    )


@router.post("/")
def analyze(payload: AnalysisPayload):
    """
    Classify f and its focal surface at the requested point.

    The response is the report document; `exit_status` carries the same
    0 / 1 / 2 verdict the command line returns.
    """
    try:
        request = _request(payload)
    except UnknownFixture as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    except (FocalFrontError, ValueError, ZeroDivisionError) as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))

    request_settings = request.resolve_settings()
    document = run_report(request, request_settings)
    return JSONResponse(content=report_payload(document, request_settings))
