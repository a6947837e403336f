"""
Pydantic models for parsed system descriptions.

Rules are kept in one canonical order (source color, target color,
translation) so that rendering and re-parsing a document gives back an
equal document.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from lattice.expansion import ExpansionMap
from substitution.mfs import MFS
from utils.errors import UnknownName

KNOWN_OPTIONS = ("max_depth", "collar", "direct_check")


class RuleEntry(BaseModel):
    """One map x -> Qx + translation from color ``source`` into color ``target``."""
    model_config = ConfigDict(frozen=True)

    target: str
    source: str
    translation: tuple[int, ...]


class SeedEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    color: str
    position: tuple[int, ...]


class SpecDocument(BaseModel):
    """A validated system description."""
    model_config = ConfigDict(frozen=True)

    dimension: int
    matrix: tuple[tuple[int, ...], ...]
    colors: tuple[str, ...]
    rules: tuple[RuleEntry, ...] = ()
    seed: SeedEntry | None = None
    options: dict[str, int] = Field(default_factory=dict)

    def color_index(self, name: str) -> int:
        try:
            return self.colors.index(name)
        except ValueError:
            raise UnknownName(name, list(self.colors)) from None

    def expansion(self) -> ExpansionMap:
        return ExpansionMap(self.matrix)

    def build_mfs(self) -> MFS:
        """The MFS described by the rules (NotExpansive if Q is not expansive)."""
        maps = (
            (self.color_index(r.target), self.color_index(r.source), r.translation)
            for r in self.rules
        )
        return MFS.from_maps(self.expansion(), len(self.colors), maps)

    def option(self, name: str, default: int | None = None) -> int | None:
        return self.options.get(name, default)
