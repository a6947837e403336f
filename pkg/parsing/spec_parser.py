"""
Text -> SpecDocument and back.

Syntax errors carry the line and column reported by the LALR parser;
semantic errors (unknown color, non-square matrix, mixed shorthands, ...)
carry the line of the offending statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from lark import Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from lattice.sublattice import format_vector
from parsing.grammar import build_parser
from parsing.models import KNOWN_OPTIONS, RuleEntry, SeedEntry, SpecDocument
from utils.errors import SpecSemanticError, SpecSyntaxError
from utils.logger import get_logger

log = get_logger("parsing.spec_parser")

EMPTY = "_"


def _describe(exc: UnexpectedInput) -> str:
    if isinstance(exc, UnexpectedToken):
        if exc.token.type == "$END":
            return "unexpected end of input"
        return f"unexpected token {str(exc.token)!r}"
    if isinstance(exc, UnexpectedCharacters):
        return f"unexpected character {exc.char!r}"
    if isinstance(exc, UnexpectedEOF):
        return "unexpected end of input"
    return str(exc).splitlines()[0]


def parse_spec(text: str) -> SpecDocument:
    """
    Parse and validate a system description.

    Raises:
        SpecSyntaxError: The text does not match the grammar.
        SpecSemanticError: The text parses but describes no valid system.
    """
    try:
        tree = build_parser().parse(text)
    except UnexpectedInput as exc:
        line = exc.line if isinstance(exc.line, int) and exc.line > 0 else None
        column = exc.column if isinstance(exc.column, int) and exc.column > 0 else None
        raise SpecSyntaxError(_describe(exc), line, column) from None
    doc = _DocumentBuilder().build(tree)
    log.debug("Parsed %d colors, %d rules in Z^%d", len(doc.colors), len(doc.rules), doc.dimension)
    return doc


# ---------------------------------------------------------------------------
# Tree -> document
# ---------------------------------------------------------------------------

def _ints(node: Tree) -> tuple[int, ...]:
    return tuple(int(tok) for tok in node.children if isinstance(tok, Token))


@dataclass
class _DocumentBuilder:
    dim: tuple[int, int] | None = None
    matrix: tuple[tuple[tuple[int, ...], ...], int] | None = None
    colors: tuple[tuple[str, ...], int] | None = None
    rules: list[tuple[str, str, tuple[int, ...], int]] = field(default_factory=list)
    seed: tuple[str, tuple[int, ...], int] | None = None
    options: dict[str, int] = field(default_factory=dict)
    shorthand: tuple[Tree, int] | None = None

    def build(self, tree: Tree) -> SpecDocument:
        for stmt in tree.children:
            getattr(self, f"_on_{stmt.data}")(stmt, stmt.meta.line)

        if self.shorthand is not None:
            if self.rules:
                raise SpecSemanticError("rule statements cannot be mixed with a shorthand", self.rules[0][3])
            node, line = self.shorthand
            if node.data == "sub_stmt":
                d, matrix, colors, rules = self._expand_sub(node, line)
            else:
                d, matrix, colors, rules = self._expand_block(node, line)
        else:
            d, matrix, colors, rules = self._general()

        index = {c: i for i, c in enumerate(colors)}
        entries = sorted(
            {RuleEntry(target=t, source=s, translation=v) for t, s, v in rules},
            key=lambda r: (index[r.source], index[r.target], r.translation),
        )
        if not entries:
            raise SpecSemanticError("the system has no maps")

        seed = None
        if self.seed is not None:
            name, position, line = self.seed
            self._check_color(name, colors, line)
            if len(position) != d:
                raise SpecSemanticError(f"seed position {format_vector(position)} is not in Z^{d}", line)
            seed = SeedEntry(color=name, position=position)

        return SpecDocument(
            dimension=d,
            matrix=matrix,
            colors=colors,
            rules=tuple(entries),
            seed=seed,
            options=dict(sorted(self.options.items())),
        )

    # --- statements ---

    def _once(self, attr: str, what: str, line: int) -> None:
        if getattr(self, attr) is not None:
            raise SpecSemanticError(f"duplicate {what} statement", line)

    def _on_dim_stmt(self, node: Tree, line: int) -> None:
        self._once("dim", "dim", line)
        d = int(node.children[0])
        if d < 1:
            raise SpecSemanticError("dimension must be positive", line)
        self.dim = (d, line)

    def _on_matrix_stmt(self, node: Tree, line: int) -> None:
        self._once("matrix", "matrix", line)
        rows = tuple(_ints(row) for row in node.children)
        if any(len(r) != len(rows) for r in rows):
            raise SpecSemanticError(f"matrix must be square, got {len(rows)} rows of lengths {[len(r) for r in rows]}", line)
        self.matrix = (rows, line)

    def _on_colors_stmt(self, node: Tree, line: int) -> None:
        self._once("colors", "colors", line)
        names = tuple(str(tok) for tok in node.children)
        if len(set(names)) != len(names):
            raise SpecSemanticError("duplicate color name", line)
        if EMPTY in names:
            raise SpecSemanticError(f"{EMPTY!r} cannot be a color name", line)
        self.colors = (names, line)

    def _on_rule_stmt(self, node: Tree, line: int) -> None:
        target, source, vector = node.children
        self.rules.append((str(target), str(source), _ints(vector), line))

    def _on_seed_stmt(self, node: Tree, line: int) -> None:
        self._once("seed", "seed", line)
        name, vector = node.children
        self.seed = (str(name), _ints(vector), line)

    def _on_option_stmt(self, node: Tree, line: int) -> None:
        name, value = str(node.children[0]), int(node.children[1])
        if name not in KNOWN_OPTIONS:
            raise SpecSemanticError(f"unknown option {name!r}; known: {', '.join(KNOWN_OPTIONS)}", line)
        if name in self.options:
            raise SpecSemanticError(f"duplicate option {name!r}", line)
        self.options[name] = value

    def _on_sub_stmt(self, node: Tree, line: int) -> None:
        self._once("shorthand", "shorthand", line)
        self.shorthand = (node, line)

    _on_block_stmt = _on_sub_stmt

    # --- expansion ---

    @staticmethod
    def _check_color(name: str, colors: tuple[str, ...], line: int) -> None:
        if name not in colors:
            raise SpecSemanticError(f"unknown color {name!r}", line)

    def _shorthand_colors(self, defined: list[str], line: int) -> tuple[str, ...]:
        if len(set(defined)) != len(defined):
            raise SpecSemanticError("a color is given two images", line)
        if self.colors is None:
            return tuple(defined)
        names, cline = self.colors
        if set(names) != set(defined):
            raise SpecSemanticError("colors statement does not match the shorthand's colors", cline)
        return names

    def _expand_sub(self, node: Tree, line: int):
        if self.dim is not None and self.dim[0] != 1:
            raise SpecSemanticError("the sub shorthand is one-dimensional", self.dim[1])
        words = [(str(r.children[0]), str(r.children[1])[1:-1], r.meta.line) for r in node.children]
        colors = self._shorthand_colors([w[0] for w in words], line)
        if self.matrix is not None:
            matrix, mline = self.matrix
            if len(matrix) != 1:
                raise SpecSemanticError("the sub shorthand needs a 1x1 matrix", mline)
        else:
            lengths = {len(w[1]) for w in words}
            if len(lengths) != 1:
                raise SpecSemanticError("words differ in length; give an explicit matrix", line)
            matrix = ((lengths.pop(),),)
        rules = []
        for source, word, wline in words:
            for t, letter in enumerate(word):
                if letter == EMPTY:
                    continue
                self._check_color(letter, colors, wline)
                rules.append((letter, source, (t,)))
        return 1, matrix, colors, rules

    def _expand_block(self, node: Tree, line: int):
        n = int(node.children[0])
        if n < 2:
            raise SpecSemanticError("block size must be at least 2", line)
        if self.dim is not None and self.dim[0] != 2:
            raise SpecSemanticError("the block shorthand is two-dimensional", self.dim[1])
        matrix = ((n, 0), (0, n))
        if self.matrix is not None and self.matrix[0] != matrix:
            raise SpecSemanticError(f"block({n}) implies matrix [[{n},0],[0,{n}]]", self.matrix[1])
        blocks = node.children[1:]
        colors = self._shorthand_colors([str(b.children[0]) for b in blocks], line)
        rules = []
        for block in blocks:
            source = str(block.children[0])
            rows = [[str(tok) for tok in row.children] for row in block.children[1:]]
            if len(rows) != n or any(len(r) != n for r in rows):
                raise SpecSemanticError(f"block of {source!r} must be {n}x{n}", block.meta.line)
            for r, row in enumerate(rows):
                for c, name in enumerate(row):
                    if name == EMPTY:
                        continue
                    self._check_color(name, colors, block.meta.line)
                    rules.append((name, source, (c, n - 1 - r)))
        return 2, matrix, colors, rules

    def _general(self):
        if self.matrix is None:
            raise SpecSemanticError("missing matrix statement")
        if self.colors is None:
            raise SpecSemanticError("missing colors statement")
        matrix, mline = self.matrix
        d = len(matrix)
        if self.dim is not None and self.dim[0] != d:
            raise SpecSemanticError(f"dim {self.dim[0]} does not match a {d}x{d} matrix", mline)
        colors = self.colors[0]
        rules = []
        seen = set()
        for target, source, vector, line in self.rules:
            self._check_color(target, colors, line)
            self._check_color(source, colors, line)
            if len(vector) != d:
                raise SpecSemanticError(f"translation {format_vector(vector)} is not in Z^{d}", line)
            key = (target, source, vector)
            if key in seen:
                raise SpecSemanticError("duplicate rule", line)
            seen.add(key)
            rules.append(key)
        return d, matrix, colors, rules


# ---------------------------------------------------------------------------
# Document -> text
# ---------------------------------------------------------------------------

def render_spec(doc: SpecDocument) -> str:
    """Canonical general-form text; parse_spec(render_spec(doc)) == doc."""
    rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in doc.matrix)
    lines = [
        f"dim {doc.dimension}",
        f"matrix [{rows}]",
        "colors " + " ".join(doc.colors),
    ]
    for r in doc.rules:
        lines.append(f"rule {r.target} <- {r.source} @ ({','.join(str(x) for x in r.translation)})")
    if doc.seed is not None:
        lines.append(f"seed {doc.seed.color} @ ({','.join(str(x) for x in doc.seed.position)})")
    for name, value in sorted(doc.options.items()):
        lines.append(f"option {name} = {value}")
    return "\n".join(lines) + "\n"
