"""
FocalFront - Main API Application

FastAPI application exposing analyses and the fixture registry.
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from focalfront.api.routes import analysis, fixtures
from focalfront.config import get_settings
from focalfront.services.fixtures import list_fixtures


settings = get_settings()
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan - startup and shutdown."""
    logging.basicConfig(level=getattr(logging, settings.log_level))
    logger.info(f"{settings.app_name} {settings.app_version} serving {len(list_fixtures())} fixtures")
    yield


app = FastAPI(
    title=settings.app_name,
    description="Singularities and focal surfaces of wave fronts from polynomial jets",
    version=settings.app_version,
    lifespan=lifespan,
    docs_url="/docs",
    redoc_url="/redoc",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(analysis.router, prefix=f"{settings.api_prefix}/analysis", tags=["Analysis"])
app.include_router(fixtures.router, prefix=f"{settings.api_prefix}/fixtures", tags=["Fixtures"])


@app.get("/")
async def root():
    """Root endpoint with service info."""
    return {
        "name": settings.app_name,
        "version": settings.app_version,
        "schema_version": settings.schema_version,
        "docs": "/docs",
        "status": "operational",
    }


@app.get("/health")
async def health():
    """Health check endpoint."""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "focalfront.api.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.debug,
    )
