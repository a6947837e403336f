"""
LALR grammar of the system description language.

    dim 2
    matrix [[2,0],[0,2]]
    colors p q r s
    rule p <- p @ (1,1)
    seed p @ (0,0)
    option max_depth = 20

Shorthands (one per document, instead of rule lines):

    sub { a -> "aba"  b -> "bcc"  c -> "abc" }       # 1D, '_' = empty position
    block(2) { p -> [s p / p q]  q -> [q r / p q] }  # rows listed top to bottom

Comments run from '#' to the end of the line.
"""

from __future__ import annotations

from functools import lru_cache

from lark import Lark

GRAMMAR = r"""
start: _statement*

_statement: dim_stmt
          | matrix_stmt
          | colors_stmt
          | rule_stmt
          | seed_stmt
          | option_stmt
          | sub_stmt
          | block_stmt

dim_stmt: "dim" INT
matrix_stmt: "matrix" "[" int_row ("," int_row)* "]"
int_row: "[" SIGNED_INT ("," SIGNED_INT)* "]"
colors_stmt: "colors" NAME+
rule_stmt: "rule" NAME "<-" NAME "@" vector
seed_stmt: "seed" NAME "@" vector
option_stmt: "option" NAME "=" SIGNED_INT
vector: "(" SIGNED_INT ("," SIGNED_INT)* ")"

sub_stmt: "sub" "{" word_rule+ "}"
word_rule: NAME "->" ESCAPED_STRING

block_stmt: "block" "(" INT ")" "{" block_rule+ "}"
block_rule: NAME "->" "[" grid_row ("/" grid_row)* "]"
grid_row: NAME+

NAME: /[A-Za-z0-9_][A-Za-z0-9_']*/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.ESCAPED_STRING
%import common.WS

%ignore WS
%ignore COMMENT
"""


@lru_cache(maxsize=1)
def build_parser() -> Lark:
    return Lark(GRAMMAR, start="start", parser="lalr", propagate_positions=True)
