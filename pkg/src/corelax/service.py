"""HTTP facade over the solver.

Runs the same in-process calls as the CLI; useful when solves are long or
shared between clients. Start it with `corelax serve` or point uvicorn at
`corelax.service:app`.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .model import ModelError, evaluate_cost
from .search import Outcome, TooLarge, brute_force_optimum, solve_mode
from .wcsp import WcspError, emit_result, parse_wcsp, random_instance, serialize_wcsp

app = FastAPI(title="corelax", description="Weighted constraint network solving over HTTP")


class SolveRequest(BaseModel):
    wcsp: str = Field(description="Instance in wcsp text format")
    mode: Literal["complete", "complete-nomuc", "greedy"] = "complete"
    muc: Literal["deletion", "dichotomic"] = "deletion"
    time_limit: float | None = None
    node_budget: int | None = None


class StatsResponse(BaseModel):
    fronts_popped: int
    cns_solved: int
    mucs_extracted: int
    nodes: int
    wall_time: float
    muc_sizes: list[int]


class SolveResponse(BaseModel):
    status: str
    cost: int | None
    solution: list[int] | None
    stats: StatsResponse
    output: str = Field(description="The result line protocol, as the CLI prints it")


class OracleRequest(BaseModel):
    wcsp: str


class EvaluateRequest(BaseModel):
    wcsp: str
    values: list[int]


class EvaluateResponse(BaseModel):
    cost: int


class GenerateRequest(BaseModel):
    vars: int
    domain: int
    constraints: int
    arity: int
    k: int
    seed: int
    costs: list[int] = [0, 1, 2, 5, 10]
    defaults: list[int] = [0, 10]
    name: str | None = None


class GenerateResponse(BaseModel):
    wcsp: str


def _parse(text: str):
    try:
        return parse_wcsp(text)
    except (WcspError, ModelError) as exc:
        raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}") from exc


def _respond(outcome: Outcome) -> SolveResponse:
    return SolveResponse(
        status=outcome.status.value,
        cost=outcome.cost,
        solution=list(outcome.solution) if outcome.solution is not None else None,
        stats=StatsResponse(
            fronts_popped=outcome.stats.fronts_popped,
            cns_solved=outcome.stats.cns_solved,
            mucs_extracted=outcome.stats.mucs_extracted,
            nodes=outcome.stats.nodes,
            wall_time=outcome.stats.wall_time,
            muc_sizes=outcome.stats.muc_sizes,
        ),
        output=emit_result(outcome),
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/solve", response_model=SolveResponse)
def solve(request: SolveRequest) -> SolveResponse:
    wcn = _parse(request.wcsp)
    outcome = solve_mode(
        wcn,
        request.mode,
        muc_strategy=request.muc,
        time_limit=request.time_limit,
        node_budget=request.node_budget,
    )
    return _respond(outcome)


@app.post("/oracle", response_model=SolveResponse)
def oracle(request: OracleRequest) -> SolveResponse:
    wcn = _parse(request.wcsp)
    try:
        return _respond(brute_force_optimum(wcn))
    except TooLarge as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.post("/evaluate", response_model=EvaluateResponse)
def evaluate(request: EvaluateRequest) -> EvaluateResponse:
    wcn = _parse(request.wcsp)
    if len(request.values) != wcn.n:
        raise HTTPException(status_code=400, detail=f"expected {wcn.n} values")
    for x, val in enumerate(request.values):
        if not 0 <= val < wcn.variables[x].domain_size:
            raise HTTPException(
                status_code=400, detail=f"value {val} outside domain of variable {x}"
            )
    return EvaluateResponse(cost=evaluate_cost(wcn, request.values))


@app.post("/generate", response_model=GenerateResponse)
def generate(request: GenerateRequest) -> GenerateResponse:
    try:
        wcn = random_instance(
            request.vars,
            request.domain,
            request.constraints,
            request.arity,
            request.costs,
            request.defaults,
            request.k,
            request.seed,
            name=request.name,
        )
    except (WcspError, ModelError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return GenerateResponse(wcsp=serialize_wcsp(wcn))
