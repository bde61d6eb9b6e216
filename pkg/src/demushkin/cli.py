"""Command-line client for the analyzer.

Every verb builds the same request models the HTTP service accepts.  By
default the service layer runs in process; with ``--url`` the CLI posts the
request to a running server instead and prints the identical JSON.

Exit codes: 0 success, 1 precondition/domain error, 2 parse error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click
import httpx
import pydantic

from .errors import DomainError, ParseError
from .service import app as service_app
from .service.app import (
    analyze as analyze_route,
    character_image as image_route,
    check_character as check_route,
    construct as construct_route,
    family_form as family_route,
    isometric as isometric_route,
    radical as radical_route,
    solve_character as solve_route,
    subgroup as subgroup_route,
    symplectic_basis as symplectic_route,
    t_invariant as t_route,
)
from .service.schemas import (
    CharacterImageRequest,
    CharacterModel,
    CheckCharacterRequest,
    ConstructRequest,
    FamilyFormRequest,
    FormModel,
    IsometricRequest,
    PresentationIn,
    RadicalRequest,
    SolveCharacterRequest,
    SubgroupRequest,
    SymplecticBasisRequest,
    TInvariantRequest,
)

GRAMMAR_HELP = """\
Word grammar (relators in presentation files):

\b
  word     := atom (WS atom)*            -- juxtaposition is product, left to right
  atom     := factor ("^" sint)?
  factor   := gen | "[" word "," word "]" | "(" word ")"
  gen      := "x" uint                   -- 1-based
  sint     := "-"? uint

Whitespace separates atoms; "*" is accepted as equivalent to whitespace.
ASCII only.  Commutators mean [a,b] = a^-1 b^-1 a b.

\b
Presentation file format (line-oriented):
  p = <prime>
  generators = <n>
  relator = "<word>"
"""


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(payload):
    click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _open_client(url: str) -> httpx.Client:
    return httpx.Client(base_url=url)


def _dispatch(ctx, path: str, request_model, local_route):
    """Run a request either in process or against a remote server."""
    url = ctx.obj.get("url")
    if url is None:
        try:
            response = local_route(request_model)
        except ParseError as e:
            _fail(str(e), 2)
        except DomainError as e:
            _fail(str(e), 1)
        return response.model_dump(mode="json")
    with _open_client(url) as client:
        reply = client.post(path, json=request_model.model_dump(mode="json"))
    if reply.status_code != 200:
        try:
            detail = str(reply.json().get("detail", ""))
        except ValueError:
            detail = reply.text[:200]
        if reply.status_code == 400:
            _fail(detail or "parse error", 2)
        if reply.status_code == 422:
            _fail(detail or "domain error", 1)
        _fail(f"service returned status {reply.status_code}: {detail}", 1)
    return reply.json()


def _load_presentation_file(path: str) -> PresentationIn:
    text = Path(path).read_text(encoding="ascii")
    try:
        return PresentationIn.from_file_text(text)
    except ParseError as e:
        _fail(str(e), 2)
    except DomainError as e:
        _fail(str(e), 1)


def _load_form_file(path: str) -> FormModel:
    try:
        payload = json.loads(Path(path).read_text(encoding="ascii"))
        return FormModel(**payload)
    except (json.JSONDecodeError, TypeError, pydantic.ValidationError) as e:
        _fail(f"bad form file {path}: {e}", 2)


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        _fail(f"{what} must be a comma-separated integer list, got {text!r}", 2)


@click.group(epilog=GRAMMAR_HELP)
@click.option("--url", default=None, help="Base URL of a running service; default runs in process.")
@click.pass_context
def main(ctx, url: Optional[str]):
    """Analyze one-relator pro-p presentations: invariants, subgroups,
    property-P characters, and skew forms over GF(p)."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def analyze(ctx, file):
    """Full invariant report of a presentation file."""
    request = _load_presentation_file(file)
    _emit(_dispatch(ctx, "/analyze", request, analyze_route))


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--chi", required=True, help="Functional over GF(p), e.g. 0,0,1.")
@click.pass_context
def subgroup(ctx, file, chi):
    """Index-p subgroup certificate {s, h2, d_U} for the kernel of chi."""
    pres = _load_presentation_file(file)
    request = SubgroupRequest(presentation=pres, chi=_parse_int_list(chi, "--chi"))
    _emit(_dispatch(ctx, "/subgroup", request, subgroup_route))


@main.command(name="solve-character")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--modulus", default=None, help='Prime power, "p^k" or plain value; default p^6.')
@click.pass_context
def solve_character(ctx, file, modulus):
    """Solve for a property-P character; prints null when none exists."""
    pres = _load_presentation_file(file)
    request = SolveCharacterRequest(presentation=pres, modulus=modulus)
    _emit(_dispatch(ctx, "/characters/solve", request, solve_route))


@main.command(name="check-character")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--values", required=True, help="Generator images, e.g. 1,13.")
@click.option("--modulus", default=None, help='Prime power, "p^k" or plain value; default p^6.')
@click.pass_context
def check_character(ctx, file, values, modulus):
    """Check property P; prints the Fox coefficient vector either way."""
    pres = _load_presentation_file(file)
    request = CheckCharacterRequest(
        presentation=pres, values=_parse_int_list(values, "--values"), modulus=modulus
    )
    _emit(_dispatch(ctx, "/characters/check", request, check_route))


@main.command(name="character-image")
@click.option("--modulus", required=True, help='Prime power, "p^k" or plain value.')
@click.option("--values", required=True, help="Character values, e.g. 1,13.")
@click.pass_context
def character_image(ctx, modulus, values):
    """Classify the closed subgroup generated by character values."""
    request = CharacterImageRequest(
        character=CharacterModel(modulus=modulus, values=_parse_int_list(values, "--values"))
    )
    _emit(_dispatch(ctx, "/characters/image", request, image_route))


def _run_construct(ctx, request: ConstructRequest, output: Optional[str]):
    payload = _dispatch(ctx, "/construct", request, construct_route)
    if output:
        Path(output).write_text(payload["file"], encoding="ascii")
    else:
        click.echo(payload["file"], nl=False)


@main.group()
def construct():
    """Build a presentation from one of the classification families."""


@construct.command(name="canonical")
@click.option("--p", required=True, type=int)
@click.option("--q", required=True, type=int, help="0 or a power of p, not 2.")
@click.option("--n", required=True, type=int, help="Even generator count >= 2.")
@click.option("--output", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def construct_canonical(ctx, p, q, n, output):
    """x1^q [x1,x2] [x3,x4] ... [x(n-1),xn]."""
    _run_construct(ctx, ConstructRequest(kind="canonical", p=p, q=q, n=n), output)


def _parse_coeffs(coeff: tuple[str, ...]):
    out = []
    for item in coeff:
        try:
            pair, _, value = item.partition("=")
            i, j = pair.split(",")
            out.append((int(i), int(j), int(value) if value else 1))
        except ValueError:
            _fail(f"bad --coeff {item!r}; expected i,j=v", 2)
    return out or None


@construct.command(name="pro2")
@click.option("--case", required=True, type=click.Choice(["1", "2", "3", "t0"]))
@click.option("--f", default=None, type=int, help="Exponent f >= 2 (unused for t0).")
@click.option("--n", required=True, type=int)
@click.option("--coeff", multiple=True, help="Tail coefficient i,j=v; repeatable.")
@click.option("--output", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def construct_pro2(ctx, case, f, n, coeff, output):
    """The pro-2 construction relators (cases 1, 2, 3, and t0)."""
    request = ConstructRequest(
        kind="pro2", case=case, f=f, n=n, coefficients=_parse_coeffs(coeff)
    )
    _run_construct(ctx, request, output)


@construct.command(name="s-family")
@click.option("--q", required=True, type=int)
@click.option("--qprime", "q_prime", required=True, type=int, help="Power of p exceeding q.")
@click.option("--blocks", required=True, type=int)
@click.option("--output", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def construct_s_family(ctx, q, q_prime, blocks, output):
    """x1^q [x1,x2] x3^q' [x3,x4] ... with the given number of primed blocks."""
    request = ConstructRequest(kind="s-family", q=q, q_prime=q_prime, blocks=blocks)
    _run_construct(ctx, request, output)


@construct.command(name="from-form")
@click.option("--q", required=True, type=int)
@click.option("--form", "form_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--pivot", default="1,2", help="Symplectic pivot pair, e.g. 1,2.")
@click.option("--output", default=None, type=click.Path(dir_okay=False))
@click.pass_context
def construct_from_form(ctx, q, form_file, pivot, output):
    """Relator realizing a nondegenerate alternate form as cup product."""
    pivot_pair = _parse_int_list(pivot, "--pivot")
    if len(pivot_pair) != 2:
        _fail(f"--pivot needs two indices, got {pivot!r}", 2)
    request = ConstructRequest(
        kind="from-form", q=q, form=_load_form_file(form_file), pivot=tuple(pivot_pair)
    )
    _run_construct(ctx, request, output)


@main.group()
def form():
    """Operations on skew-symmetric Gram matrices (JSON {"p":..,"gram":[[..]]})."""


@form.command(name="family")
@click.argument("family_id", type=click.Choice(["1", "2", "3"]))
@click.option("--n", required=True, type=int, help="Index pair count; the form has dimension 2n.")
@click.pass_context
def form_family(ctx, family_id, n):
    """Gram of one of the three rule-defined families over GF(2)."""
    request = FamilyFormRequest(family=int(family_id), n=n)
    _emit(_dispatch(ctx, "/forms/family", request, family_route))


@form.command(name="t")
@click.option("--file", "file_", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def form_t(ctx, file_):
    """Trichotomy invariant t of a form over GF(2), with witnesses."""
    request = TInvariantRequest(form=_load_form_file(file_))
    _emit(_dispatch(ctx, "/forms/t", request, t_route))


@form.command(name="radical")
@click.option("--file", "file_", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def form_radical(ctx, file_):
    """Basis of the radical; empty means nondegenerate."""
    request = RadicalRequest(form=_load_form_file(file_))
    _emit(_dispatch(ctx, "/forms/radical", request, radical_route))


@form.command(name="symplectic-basis")
@click.option("--file", "file_", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def form_symplectic(ctx, file_):
    """Symplectic basis of a nondegenerate alternate form."""
    request = SymplecticBasisRequest(form=_load_form_file(file_))
    _emit(_dispatch(ctx, "/forms/symplectic-basis", request, symplectic_route))


@form.command(name="isometric")
@click.option("--file", "file_", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--other", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def form_isometric(ctx, file_, other):
    """Search for an isometry witness between two forms (dimension <= 8)."""
    request = IsometricRequest(f=_load_form_file(file_), g=_load_form_file(other))
    _emit(_dispatch(ctx, "/forms/isometric", request, isometric_route))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the HTTP service with uvicorn."""
    import uvicorn

    uvicorn.run(service_app, host=host, port=port)


if __name__ == "__main__":
    main()
