"""
Built-in example systems, stored as description text and parsed on load.
"""

from __future__ import annotations

from typing import Callable

from parsing.models import SpecDocument
from parsing.spec_parser import parse_spec
from utils.errors import UnknownName

_PERIODIC1 = """
# a, b and c all substitute to the same word
sub { a -> "abcacb"  b -> "abcacb"  c -> "abcacb" }
"""

_ABAB = 'sub { a -> "ab"  b -> "ab" }'

_THUE_MORSE = 'sub { a -> "ab"  b -> "ba" }'

_KOLAKOSKI24 = 'sub { a -> "aba"  b -> "bcc"  c -> "abc" }'

_NONADMISSIBLE1 = """
# b at offset 5 of the images of a and c spreads beyond the unit interval
dim 1
matrix [[3]]
colors a b c
rule a <- a @ (0)
rule b <- a @ (1)
rule c <- a @ (2)
rule b <- a @ (5)
rule a <- b @ (1)
rule b <- b @ (0)
rule a <- c @ (2)
rule b <- c @ (1)
rule c <- c @ (0)
rule b <- c @ (5)
"""

_NONADMISSIBLE1_EQUIVALENT = 'sub { a -> "abc"  b -> "bab"  c -> "cba" }'

_NONADMISSIBLE2 = """
dim 1
matrix [[4]]
colors a b c d
rule a <- a @ (15)
rule b <- a @ (14)
rule c <- a @ (13)
rule d <- a @ (12)
rule d <- a @ (0)
rule a <- b @ (15)
rule b <- b @ (13)
rule c <- b @ (14)
rule d <- b @ (12)
rule b <- c @ (12)
rule c <- c @ (15)
rule c <- c @ (14)
rule c <- c @ (13)
rule a <- d @ (15)
rule b <- d @ (14)
rule b <- d @ (13)
seed a @ (-5)
"""

_NONADMISSIBLE2_EQUIVALENT = 'sub { a -> "dcba"  b -> "dbca"  c -> "cccb"  d -> "dbba" }'

_CHAIR = """
block(2) {
  p -> [s p / p q]
  q -> [q r / p q]
  r -> [s r / r q]
  s -> [s r / p s]
}
"""

_TABLE = """
block(2) {
  p -> [s p / q p]
  q -> [q q / p r]
  r -> [r s / r q]
  s -> [p r / s s]
}
"""

_PAPERFOLDING = 'sub { a -> "ab"  b -> "cb"  c -> "ad"  d -> "cd" }'

_HEIGHT2 = 'sub { 0 -> "010"  1 -> "102"  2 -> "201" }'

# 20 classes; upper-case letters are the barred classes
_HOUSE = """
block(2) {
  a -> [I e / a A]
  b -> [I b / f B]
  c -> [C g / c K]
  d -> [D d / h K]
  e -> [I e / e A]
  f -> [I f / f B]
  g -> [C g / g K]
  h -> [D h / h K]
  i -> [C i / i A]
  k -> [D k / k B]
  A -> [E i / a A]
  B -> [F b / k B]
  C -> [C i / c G]
  D -> [D d / k H]
  E -> [E i / a E]
  F -> [F b / k F]
  G -> [G i / c G]
  H -> [H d / k H]
  I -> [I b / a I]
  K -> [K d / c K]
}
"""


def worst_case_text(m: int) -> str:
    """Description of 1 -> 12, 2 -> 23, ..., m -> 11."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    names = [str(i + 1) for i in range(m)]
    images = [(names[i], names[i + 1]) for i in range(m - 1)] + [(names[0], names[0])]
    if m <= 9:
        body = "  ".join(f'{n} -> "{x}{y}"' for n, (x, y) in zip(names, images))
        return f"sub {{ {body} }}\n"
    lines = ["dim 1", "matrix [[2]]", "colors " + " ".join(names)]
    for n, (x, y) in zip(names, images):
        lines.append(f"rule {x} <- {n} @ (0)")
        lines.append(f"rule {y} <- {n} @ (1)")
    return "\n".join(lines) + "\n"


_FIXED: dict[str, tuple[str, str]] = {
    "periodic1": (_PERIODIC1, "three letters with one common image (periodic)"),
    "abab": (_ABAB, "a -> ab, b -> ab (periodic, V_a = 2Z)"),
    "thue-morse": (_THUE_MORSE, "Thue-Morse a -> ab, b -> ba"),
    "kolakoski24": (_KOLAKOSKI24, "Kolakoski-(2,4) as a -> aba, b -> bcc, c -> abc"),
    "nonadmissible1": (_NONADMISSIBLE1, "nonadmissible length-3 system with a map at offset 5"),
    "nonadmissible1-equivalent": (_NONADMISSIBLE1_EQUIVALENT, "a -> abc, b -> bab, c -> cba"),
    "nonadmissible2": (_NONADMISSIBLE2, "nonadmissible length-4 system with translations up to 15"),
    "nonadmissible2-equivalent": (_NONADMISSIBLE2_EQUIVALENT, "a -> dcba, b -> dbca, c -> cccb, d -> dbba"),
    "chair": (_CHAIR, "chair tiling, 4 orientations on Z^2"),
    "table": (_TABLE, "table tiling, 4 orientations on Z^2"),
    "paperfolding": (_PAPERFOLDING, "paperfolding a -> ab, b -> cb, c -> ad, d -> cd"),
    "height2": (_HEIGHT2, "0 -> 010, 1 -> 102, 2 -> 201 (height 2)"),
    "house": (_HOUSE, "20-class house tiling substitution on Z^2"),
}

_PARAMETRIC: dict[str, tuple[Callable[[int], str], int, str]] = {
    "worst": (worst_case_text, 3, "1 -> 12, ..., m -> 11 (minimal k = (m-1)^2)"),
}


def list_builtins() -> list[tuple[str, str]]:
    """(name, description) pairs, sorted by name."""
    entries = [(name, desc) for name, (_, desc) in _FIXED.items()]
    entries += [(f"{name}:M", desc) for name, (_, _, desc) in _PARAMETRIC.items()]
    return sorted(entries)


def builtin_text(name: str, m: int | None = None) -> str:
    if name in _FIXED:
        return _FIXED[name][0]
    if name in _PARAMETRIC:
        make, default, _ = _PARAMETRIC[name]
        return make(default if m is None else m)
    raise UnknownName(name, [n for n, _ in list_builtins()])


def builtin(name: str, m: int | None = None) -> SpecDocument:
    """
    Parsed built-in system.

    ``worst`` takes the alphabet size m (default 3); ``worst:5`` is also accepted.

    Raises:
        UnknownName: If the name is not registered.
    """
    if ":" in name:
        name, _, arg = name.partition(":")
        try:
            m = int(arg)
        except ValueError:
            raise UnknownName(f"{name}:{arg}", [n for n, _ in list_builtins()]) from None
    return parse_spec(builtin_text(name, m))
