# LALR grammar for the FSP subset: constants, indexed processes with guarded choice,
# alphabet extension, `forall` composites, plus the control-problem directive block.
GRAMMAR = r"""
start: _statement*

_statement: const_def
          | process_def
          | composite_def
          | directive

const_def: "const" UNAME "=" expr

process_def: UNAME params? "=" body local_def* alpha_ext? "."
params: "(" param ("," param)* ")"
param: UNAME "=" expr
local_def: "," UNAME index_bind* "=" body
alpha_ext: "+" label_set

?body: process_ref
     | "(" choice ")"
     | STOP  -> stop
     | ERROR -> error
process_ref: UNAME ("[" expr "]")*

choice: branch ("|" branch)*
branch: guard? sequence
guard: "when" expr
sequence: action "->" _next
_next: sequence | body

action: LNAME label_index*
?label_index: "[" expr "]"              -> index_expr
            | "[" expr ".." expr "]"    -> index_range
            | index_bind
index_bind: "[" LNAME ":" expr ".." expr "]"

composite_def: "||" UNAME params? "=" comp_par "."
comp_par: _comp_item ("||" _comp_item)*
_comp_item: comp_ref
          | comp_forall
          | "(" comp_par ")"
comp_ref: UNAME args?
comp_forall: "forall" index_bind _comp_item
args: "(" expr ("," expr)* ")"

directive: "controllable" label_set -> controllable
         | "reach" label_set        -> reach
         | "avoid" label_set        -> avoid
         | "target" UNAME           -> target
label_set: "{" [action ("," action)*] "}"

?expr: sum
     | sum "<" sum  -> lt
     | sum "<=" sum -> le
     | sum ">" sum  -> gt
     | sum ">=" sum -> ge
     | sum "=" sum  -> eq
     | sum "==" sum -> eq
     | sum "!=" sum -> ne
?sum: term
    | sum "+" term -> add
    | sum "-" term -> sub
?term: INT     -> num
     | LNAME   -> var
     | UNAME   -> const_ref
     | "-" term -> neg
     | "(" expr ")"

STOP: "STOP"
ERROR: "ERROR"
UNAME: /[A-Z][A-Za-z0-9_]*/
LNAME: /[a-z][A-Za-z0-9_]*/

%import common.INT
%import common.WS
%import common.CPP_COMMENT
%import common.C_COMMENT
%ignore WS
%ignore CPP_COMMENT
%ignore C_COMMENT
"""
