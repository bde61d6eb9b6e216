"""FastAPI application exposing the analyzer over JSON.

Every endpoint is a stateless POST wrapping a pure library call, so the
service can run with any number of workers.  Route handlers raise the
library's exceptions; the app maps ``ParseError`` to 400 and ``DomainError``
to 422.  The CLI calls the same handler functions in process.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import characters as characters_mod
from .. import forms as forms_mod
from .. import presentations as pres_mod
from ..errors import DomainError, ParseError
from ..modular import PrimePower, U2Descriptor
from .schemas import (
    AbelianizationModel,
    AnalyzeResponse,
    CharacterImageRequest,
    CharacterImageResponse,
    CharacterModel,
    CheckCharacterRequest,
    CheckCharacterResponse,
    ConstructRequest,
    ConstructResponse,
    FamilyFormRequest,
    FamilyFormResponse,
    FormModel,
    IsometricRequest,
    IsometricResponse,
    PresentationIn,
    RadicalRequest,
    RadicalResponse,
    SolveCharacterRequest,
    SolveCharacterResponse,
    SubgroupRequest,
    SubgroupResponse,
    SymplecticBasisRequest,
    SymplecticBasisResponse,
    TInvariantRequest,
    TInvariantResponse,
    U2Model,
)

app = FastAPI(
    title="demushkin",
    description="Invariants of one-relator pro-p presentations: cup-product "
    "forms, Demushkin tests, index-p subgroup certificates, and property-P "
    "characters.",
    version="0.1.0",
)


@app.exception_handler(ParseError)
async def _handle_parse_error(request: Request, exc: ParseError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(DomainError)
async def _handle_domain_error(request: Request, exc: DomainError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/")
def index() -> dict:
    return {
        "service": "demushkin",
        "endpoints": sorted(
            route.path for route in app.routes if route.path.startswith("/")
        ),
    }


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(request: PresentationIn) -> AnalyzeResponse:
    report = pres_mod.analyze(request.to_presentation())
    ab = None
    if report.abelianization is not None:
        ab = AbelianizationModel(
            torsion=report.abelianization[0], free_rank=report.abelianization[1]
        )
    return AnalyzeResponse(
        p=report.p,
        n=report.n,
        minimal=report.minimal,
        q=report.q,
        abelianization=ab,
        gram=report.gram.to_json() if report.gram is not None else None,
        demushkin=report.demushkin,
        t=report.t,
    )


@app.post("/subgroup", response_model=SubgroupResponse)
def subgroup(request: SubgroupRequest) -> SubgroupResponse:
    report = pres_mod.h2_of_index_p_subgroup(
        request.presentation.to_presentation(), request.chi
    )
    return SubgroupResponse(s=report.s, h2=report.h2, d_U=report.d_u)


def _modulus_for(pres: pres_mod.Presentation, text) -> PrimePower:
    if text is None:
        return PrimePower(pres.p, 6)
    return PrimePower.parse(text)


@app.post("/characters/solve", response_model=SolveCharacterResponse)
def solve_character(request: SolveCharacterRequest) -> SolveCharacterResponse:
    pres = request.presentation.to_presentation()
    modulus = _modulus_for(pres, request.modulus)
    certificate = characters_mod.certify_property_p(pres, modulus)
    if certificate is None:
        return SolveCharacterResponse(character=None)
    return SolveCharacterResponse(
        character=CharacterModel(**certificate.character.to_json_dict())
    )


@app.post("/characters/check", response_model=CheckCharacterResponse)
def check_character(request: CheckCharacterRequest) -> CheckCharacterResponse:
    pres = request.presentation.to_presentation()
    modulus = _modulus_for(pres, request.modulus)
    sigma = characters_mod.Character.make(modulus, request.values)
    ok, coeffs = characters_mod.has_property_p(pres, sigma)
    return CheckCharacterResponse(property_p=ok, coefficients=list(coeffs))


@app.post("/characters/image", response_model=CharacterImageResponse)
def character_image(request: CharacterImageRequest) -> CharacterImageResponse:
    modulus = PrimePower.parse(request.character.modulus)
    sigma = characters_mod.Character.make(modulus, request.character.values)
    image = characters_mod.character_image(sigma)
    if isinstance(image, U2Descriptor):
        return CharacterImageResponse(p=2, subgroup=U2Model(kind=image.kind, f=image.f))
    return CharacterImageResponse(p=modulus.p, qhat=image)


def _build_presentation(request: ConstructRequest) -> pres_mod.Presentation:
    def need(**params):
        missing = [name for name, value in params.items() if value is None]
        if missing:
            raise DomainError(
                f"construct kind {request.kind!r} requires: {', '.join(missing)}"
            )

    if request.kind == "canonical":
        need(p=request.p, q=request.q, n=request.n)
        return pres_mod.canonical_relator(request.p, request.q, request.n)
    if request.kind == "pro2":
        need(case=request.case, n=request.n)
        coeffs = None
        if request.coefficients:
            coeffs = {(i, j): c for (i, j, c) in request.coefficients}
        return pres_mod.pro2_relator(request.case, request.f, request.n, coeffs)
    if request.kind == "s-family":
        need(q=request.q, q_prime=request.q_prime, blocks=request.blocks)
        return pres_mod.s_family_relator(request.q, request.q_prime, request.blocks)
    need(q=request.q, form=request.form)
    form = forms_mod.SkewForm.from_rows(request.form.gram, request.form.p)
    pivot = tuple(request.pivot) if request.pivot else (1, 2)
    return pres_mod.relator_from_form(request.q, form, pivot)


@app.post("/construct", response_model=ConstructResponse)
def construct(request: ConstructRequest) -> ConstructResponse:
    pres = _build_presentation(request)
    built = PresentationIn.from_presentation(pres)
    return ConstructResponse(
        p=built.p,
        generators=built.generators,
        relator=built.relator,
        file=pres_mod.dump_presentation(pres),
    )


def _form_from_model(model: FormModel) -> forms_mod.SkewForm:
    return forms_mod.SkewForm.from_rows(model.gram, model.p)


@app.post("/forms/family", response_model=FamilyFormResponse)
def family_form(request: FamilyFormRequest) -> FamilyFormResponse:
    form = forms_mod.family_form(request.family, request.n)
    return FamilyFormResponse(
        p=form.p, gram=form.to_json(), family=request.family, n=request.n
    )


@app.post("/forms/t", response_model=TInvariantResponse)
def t_invariant(request: TInvariantRequest) -> TInvariantResponse:
    t, kernel, perp = forms_mod.t_invariant(_form_from_model(request.form))
    return TInvariantResponse(
        t=t,
        beta_kernel=[list(v) for v in kernel.basis],
        beta_kernel_perp=[list(v) for v in perp.basis],
    )


@app.post("/forms/radical", response_model=RadicalResponse)
def radical(request: RadicalRequest) -> RadicalResponse:
    subspace = forms_mod.radical(_form_from_model(request.form))
    return RadicalResponse(basis=[list(v) for v in subspace.basis])


@app.post("/forms/symplectic-basis", response_model=SymplecticBasisResponse)
def symplectic_basis(request: SymplecticBasisRequest) -> SymplecticBasisResponse:
    basis = forms_mod.symplectic_basis(_form_from_model(request.form))
    return SymplecticBasisResponse(basis=[list(v) for v in basis])


@app.post("/forms/isometric", response_model=IsometricResponse)
def isometric(request: IsometricRequest) -> IsometricResponse:
    witness = forms_mod.isometric(
        _form_from_model(request.f), _form_from_model(request.g)
    )
    return IsometricResponse(
        isometric=witness is not None,
        witness=[list(row) for row in witness] if witness is not None else None,
    )
