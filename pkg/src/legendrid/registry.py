"""Named fixtures: diagrams, surfaces, presentations, codes and claim files.

Fixtures live in a directory tree (the packaged ``legendrid/data`` by
default)::

    fixtures/R1.grid ... R8.grid
    surfaces/Pi1.surface, Pi2.surface
    groups/u.pres, v.pres, sigma_u.endo, sigma_v.endo, boundary_u.word
    codes/dc1.code, dc2.code, fig5.code
    claims/prop1.json, prop2.json

Diagram names accept the derived forms ``mu(X)``, ``r|(X)`` and ``-X``
(point reflection, vertical reflection, orientation reversal), nested
freely, e.g. ``-mu(R7)`` or ``mu(r|(R4))``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .grid import GridDiagram, GridError, parse, reflect_vertical, reverse, rotate_pi
from .groups import (
    Endomorphism, GroupPresentation, PresentationSyntaxError, parse_presentation, parse_word,
)
from .surfaces import CodeSyntaxError, DividingCode, LabelCoverageError, SurfaceDiagram, \
    SurfaceError, parse_code, parse_surface


class FixtureError(Exception):
    """A fixture is missing or does not pass validation."""


_OPERATORS = {"mu": rotate_pi, "r|": reflect_vertical}


def default_root() -> Path:
    return Path(str(resources.files("legendrid.data")))


class Registry:
    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else default_root()
        self._cache: dict = {}

    def _read(self, *parts: str) -> str:
        path = self.root.joinpath(*parts)
        try:
            return path.read_text()
        except OSError as exc:
            raise FixtureError(f"cannot read fixture {path}: {exc.strerror}") from None

    def _load(self, key, loader):
        if key not in self._cache:
            try:
                self._cache[key] = loader()
            except (GridError, SurfaceError, PresentationSyntaxError, CodeSyntaxError,
                    LabelCoverageError, ValueError) as exc:
                if isinstance(exc, FixtureError):
                    raise
                raise FixtureError(f"fixture {key[1]!r} is invalid: {exc}") from None
        return self._cache[key]

    # -- diagrams -------------------------------------------------------------------

    def base_diagram(self, name: str) -> GridDiagram:
        return self._load(("grid", name), lambda: parse(self._read("fixtures", f"{name}.grid")))

    def diagram(self, expr: str) -> GridDiagram:
        expr = expr.strip()
        if expr.startswith("-"):
            return reverse(self.diagram(expr[1:]))
        for op, fn in _OPERATORS.items():
            if expr.startswith(op + "(") and expr.endswith(")"):
                return fn(self.diagram(expr[len(op) + 1: -1]))
        return self.base_diagram(expr)

    def diagram_names(self) -> list[str]:
        return sorted(p.stem for p in self.root.joinpath("fixtures").glob("*.grid"))

    # -- other fixtures ---------------------------------------------------------------

    def surface(self, name: str) -> SurfaceDiagram:
        return self._load(("surface", name), lambda: parse_surface(self._read("surfaces", f"{name}.surface")))

    def presentation(self, name: str) -> GroupPresentation:
        return self._load(("pres", name), lambda: parse_presentation(self._read("groups", f"{name}.pres")))

    def endomorphism(self, name: str, presentation: str) -> Endomorphism:
        p = self.presentation(presentation)

        def load():
            mapping = {}
            for raw in self._read("groups", f"{name}.endo").splitlines():
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                gen, _, image = line.partition("=")
                if gen.strip() not in p.gens:
                    raise PresentationSyntaxError(f"unknown generator {gen.strip()!r}")
                mapping[gen.strip()] = image.strip()
            return Endomorphism.parse(mapping, p.gens)

        return self._load(("endo", name, presentation), load)

    def word(self, name: str, presentation: str) -> tuple[int, ...]:
        p = self.presentation(presentation)
        return self._load(("word", name), lambda: parse_word(self._read("groups", f"{name}.word"), p.gens))

    def code_text(self, name: str) -> str:
        return self._read("codes", f"{name}.code").strip()

    def code(self, name: str) -> DividingCode:
        return self._load(("code", name), lambda: parse_code(self.code_text(name)))

    def claims(self, name: str) -> dict:
        try:
            return json.loads(self._read("claims", f"{name}.json"))
        except json.JSONDecodeError as exc:
            raise FixtureError(f"claim file {name!r} is not valid JSON: {exc}") from None


@lru_cache(maxsize=None)
def packaged() -> Registry:
    return Registry()
