"""HTTP front end: a small FastAPI app exposing config validation and runs."""

from fastapi import FastAPI
from pydantic import BaseModel, Field

from . import __version__
from .config import validate
from .runner import run_raw


class FieldModel(BaseModel):
    type: str
    p: int | None = None


class JobRequest(BaseModel):
    n: int
    field: dict
    product: str
    group: dict
    grading: dict
    tasks: list[str]
    budget: int = 10 ** 7
    format: str = "json"
    seed: int = 0
    omega: dict | None = None

    def raw(self):
        data = self.model_dump(exclude_none=True)
        if self.omega is None:
            data.pop("omega", None)
        return data


class ValidateResponse(BaseModel):
    valid: bool
    diagnostics: list[dict]


class RunResponse(BaseModel):
    exit_code: int
    report: dict


def create_app():
    app = FastAPI(title="utgrading", version=__version__)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/validate", response_model=ValidateResponse)
    def validate_config(req: JobRequest):
        diags = validate(req.raw())
        return ValidateResponse(valid=not diags, diagnostics=diags)

    @app.post("/run", response_model=RunResponse)
    def run_config(req: JobRequest):
        code, report = run_raw(req.raw())
        return RunResponse(exit_code=code, report=report)

    return app


app = create_app()
