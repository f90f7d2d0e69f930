from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from app.config.logging import configure_logging
from app.config.settings import settings
import logging

# API Routers
from app.api.v1.analysis import router as analysis_router

logger = logging.getLogger(__name__)

app = FastAPI(
    title=settings.APP_NAME,
    description="Radial controllability, trap radius and purifiability of two-level Lindblad systems",
    version="0.1.0",
    debug=settings.DEBUG
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include API routers
app.include_router(analysis_router, prefix="/api/v1")

@app.on_event("startup")
async def on_startup():
    configure_logging()
    logger.info(f"Starting {settings.APP_NAME}...")
    logger.info(f"Environment: {settings.ENVIRONMENT}")
    logger.info(f"Default grid: {settings.DEFAULT_GRID_SIZE}, workers: {settings.ENVELOPE_WORKERS}")

@app.get("/")
async def root():
    return {
        "service": settings.APP_NAME,
        "version": "0.1.0",
        "status": "operational",
        "endpoints": ["/api/v1/analysis/project", "/api/v1/analysis/trap",
                      "/api/v1/analysis/envelope", "/api/v1/analysis/classify"],
    }

@app.get("/health")
async def health():
    return {
        "status": "healthy",
        "service": "lindblad-purifiability",
    }
