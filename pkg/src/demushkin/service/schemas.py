"""Pydantic request/response models for the service API.

These mirror the package's external JSON formats: invariant reports,
subgroup certificates, characters {"modulus": "p^k", "values": [...]},
Gram matrices as arrays of arrays of integers in [0, p).
"""

from __future__ import annotations

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from ..presentations import Presentation, load_presentation
from ..words import parse_word, word_to_text


class PresentationIn(BaseModel):
    p: int
    generators: int = Field(ge=1)
    relator: str

    def to_presentation(self) -> Presentation:
        return Presentation(self.p, self.generators, parse_word(self.relator, self.generators))

    @classmethod
    def from_presentation(cls, pres: Presentation) -> "PresentationIn":
        return cls(p=pres.p, generators=pres.n, relator=word_to_text(pres.relator))

    @classmethod
    def from_file_text(cls, text: str) -> "PresentationIn":
        return cls.from_presentation(load_presentation(text))


class AbelianizationModel(BaseModel):
    torsion: int
    free_rank: int


class AnalyzeResponse(BaseModel):
    p: int
    n: int
    minimal: bool
    q: Optional[int]
    abelianization: Optional[AbelianizationModel]
    gram: Optional[List[List[int]]]
    demushkin: bool
    t: Optional[int]


class SubgroupRequest(BaseModel):
    presentation: PresentationIn
    chi: List[int]


class SubgroupResponse(BaseModel):
    s: int
    h2: int
    d_U: int


class CharacterModel(BaseModel):
    modulus: str
    values: List[int]


class SolveCharacterRequest(BaseModel):
    presentation: PresentationIn
    modulus: Optional[str] = None  # defaults to p^6


class SolveCharacterResponse(BaseModel):
    character: Optional[CharacterModel]


class CheckCharacterRequest(BaseModel):
    presentation: PresentationIn
    values: List[int]
    modulus: Optional[str] = None


class CheckCharacterResponse(BaseModel):
    property_p: bool
    coefficients: List[int]


class U2Model(BaseModel):
    kind: str
    f: Optional[int]  # None encodes the exponent infinity (2^infinity = 0)


class CharacterImageRequest(BaseModel):
    character: CharacterModel


class CharacterImageResponse(BaseModel):
    p: int
    qhat: Optional[int] = None  # odd p: the minimal q with image in 1 + q Z
    subgroup: Optional[U2Model] = None  # p = 2: the Z_2^* subgroup descriptor


class FormModel(BaseModel):
    p: int
    gram: List[List[int]]


class ConstructRequest(BaseModel):
    kind: Literal["canonical", "pro2", "s-family", "from-form"]
    p: Optional[int] = None
    q: Optional[int] = None
    n: Optional[int] = None
    case: Optional[str] = None
    f: Optional[int] = None
    coefficients: Optional[List[Tuple[int, int, int]]] = None
    q_prime: Optional[int] = None
    blocks: Optional[int] = None
    form: Optional[FormModel] = None
    pivot: Optional[Tuple[int, int]] = None


class ConstructResponse(BaseModel):
    p: int
    generators: int
    relator: str
    file: str


class FamilyFormRequest(BaseModel):
    family: Literal[1, 2, 3]
    n: int = Field(ge=1)


class FamilyFormResponse(BaseModel):
    p: int
    gram: List[List[int]]
    family: int
    n: int


class TInvariantRequest(BaseModel):
    form: FormModel


class TInvariantResponse(BaseModel):
    t: int
    beta_kernel: List[List[int]]
    beta_kernel_perp: List[List[int]]


class RadicalRequest(BaseModel):
    form: FormModel


class RadicalResponse(BaseModel):
    basis: List[List[int]]


class SymplecticBasisRequest(BaseModel):
    form: FormModel


class SymplecticBasisResponse(BaseModel):
    basis: List[List[int]]


class IsometricRequest(BaseModel):
    f: FormModel
    g: FormModel


class IsometricResponse(BaseModel):
    isometric: bool
    witness: Optional[List[List[int]]]
