import uvicorn
from app.core.config import settings

if __name__ == "__main__":
    settings.validate_settings()
    settings.ensure_directories()
    uvicorn.run(
        "app.main:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        reload=True
    )
