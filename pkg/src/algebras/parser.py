# Parser and renderer for .alg algebra sources
import logging
from typing import Dict, List, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from ..config import CartanPattern
from ..errors import AlgebraParseError
from .definitions import (AlgebraDef, BracketDecl, CartanSplit, CasimirDecl, Involution, LetDecl,
                          ParamDecl, SpaceRecord)
from .expressions import (FUNCTIONS, IMAGINARY, BinOp, Call, Expr, Index, Name, Neg, Num, Pow, names_in,
                          render_expr, walk)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: algebra+

algebra: "algebra" ALGNAME derivation? "{" statement* "}"
derivation: "from" ALGNAME "with" binding ("," binding)*
binding: NAME ":=" expr

?statement: params | generators | elimination | let | bracket | casimir | cartan | involution | space

params: "params" "[" [param ("," param)*] "]" ";"
param: NAME [":=" expr]
generators: "generators" "[" [NAME ("," NAME)*] "]" ";"
elimination: "elimination" "[" NAME ("," NAME)* "]" ";"
let: "let" NAME "=" expr ";"
bracket: "bracket" "[" NAME "," NAME "]" "=" expr ";"
casimir: "casimir" NAME "=" expr "eigenvalue" NAME ";"
cartan: "cartan" NAME ":" "p" "=" name_list "," "h" "=" name_list "pattern" "=" PATTERN ";"
name_list: "[" [NAME ("," NAME)*] "]"
involution: "involution" NAME ":" mapping ("," mapping)* ";"
mapping: NAME "->" NAME        -> keep
       | NAME "->" "-" NAME    -> flip
space: "space" NAME ":" "dim" "=" INT "curvature" "=" expr "rank" "=" INT ["model" "=" ESCAPED_STRING] ";"

?expr: sum
?sum: product
    | sum "+" product   -> add
    | sum "-" product   -> sub
?product: unary
    | product "*" unary -> mul
    | product "/" unary -> div
?unary: power
    | "-" unary         -> neg
?power: atom
    | atom "^" INT      -> pow
?atom: INT                              -> number
    | NAME                              -> name
    | NAME "(" [expr ("," expr)*] ")"   -> call
    | atom "[" INT "]"                  -> index
    | "(" expr ")"

PATTERN: "zero" | "subh"
ALGNAME: /[^\W\d][\w\-]*/
NAME: /[^\W\d]\w*/
COMMENT: /#[^\n]*/

%import common.INT
%import common.ESCAPED_STRING
%import common.WS
%ignore WS
%ignore COMMENT
"""

_PARSER = Lark(GRAMMAR, parser="lalr", start=["start", "expr"], propagate_positions=True, maybe_placeholders=True)


def _names(items) -> Tuple[str, ...]:
    return tuple(str(t) for t in items if t is not None)


class _Statement:
    def __init__(self, kind: str, value, meta):
        self.kind = kind
        self.value = value
        self.line = getattr(meta, "line", None)
        self.column = getattr(meta, "column", None)


class AlgebraTransformer(Transformer):
    """Builds expression trees and statement records from the parse tree."""

    @v_args(inline=True)
    def number(self, token):
        return Num(int(token))

    @v_args(inline=True)
    def name(self, token):
        return Name(str(token))

    @v_args(inline=True)
    def neg(self, arg):
        return Neg(arg)

    @v_args(inline=True)
    def add(self, left, right):
        return BinOp("+", left, right)

    @v_args(inline=True)
    def sub(self, left, right):
        return BinOp("-", left, right)

    @v_args(inline=True)
    def mul(self, left, right):
        return BinOp("*", left, right)

    @v_args(inline=True)
    def div(self, left, right):
        return BinOp("/", left, right)

    @v_args(inline=True)
    def pow(self, base, exp):
        return Pow(base, int(exp))

    @v_args(inline=True)
    def index(self, target, position):
        return Index(target, int(position))

    def call(self, children):
        func, *args = children
        return Call(str(func), tuple(a for a in args if a is not None))

    @v_args(inline=True)
    def binding(self, name, expr):
        return (str(name), expr)

    def derivation(self, children):
        base, *bindings = children
        return (str(base), tuple(bindings))

    @v_args(inline=True)
    def param(self, name, definition):
        return ParamDecl(str(name), definition)

    def name_list(self, children):
        return _names(children)

    @v_args(inline=True)
    def keep(self, source, target):
        return (str(source), 1, str(target))

    @v_args(inline=True)
    def flip(self, source, target):
        return (str(source), -1, str(target))

    @v_args(meta=True)
    def params(self, meta, children):
        return _Statement("params", tuple(c for c in children if c is not None), meta)

    @v_args(meta=True)
    def generators(self, meta, children):
        return _Statement("generators", _names(children), meta)

    @v_args(meta=True)
    def elimination(self, meta, children):
        return _Statement("elimination", _names(children), meta)

    @v_args(meta=True)
    def let(self, meta, children):
        return _Statement("let", LetDecl(str(children[0]), children[1]), meta)

    @v_args(meta=True)
    def bracket(self, meta, children):
        return _Statement("bracket", BracketDecl(str(children[0]), str(children[1]), children[2]), meta)

    @v_args(meta=True)
    def casimir(self, meta, children):
        return _Statement("casimir", CasimirDecl(str(children[0]), children[1], str(children[2])), meta)

    @v_args(meta=True)
    def cartan(self, meta, children):
        label, p, h, pattern = children
        return _Statement("cartan", CartanSplit(str(label), p, h, CartanPattern(str(pattern))), meta)

    @v_args(meta=True)
    def involution(self, meta, children):
        return _Statement("involution", Involution(str(children[0]), tuple(children[1:])), meta)

    @v_args(meta=True)
    def space(self, meta, children):
        label, dim, curvature, rank, model = children
        text = None if model is None else str(model)[1:-1]
        return _Statement("space", SpaceRecord(str(label), int(dim), curvature, int(rank), text), meta)

    @v_args(meta=True)
    def algebra(self, meta, children):
        name = str(children[0])
        derivation = children[1] if len(children) > 1 and isinstance(children[1], tuple) else None
        statements = [c for c in children[1:] if isinstance(c, _Statement)]
        return _assemble(name, derivation, statements, meta)

    def start(self, children):
        return list(children)


def _fail(message: str, where) -> AlgebraParseError:
    return AlgebraParseError(message, getattr(where, "line", None), getattr(where, "column", None))


def _assemble(name: str, derivation, statements: List[_Statement], meta) -> AlgebraDef:
    grouped: Dict[str, List[_Statement]] = {}
    for statement in statements:
        grouped.setdefault(statement.kind, []).append(statement)
    for single in ("params", "generators", "elimination"):
        if len(grouped.get(single, [])) > 1:
            raise _fail(f"{single} declared more than once in {name}", grouped[single][1])

    def values(kind):
        return tuple(s.value for s in grouped.get(kind, []))

    params = grouped["params"][0].value if "params" in grouped else ()
    generators = grouped["generators"][0].value if "generators" in grouped else ()
    elimination = grouped["elimination"][0].value if "elimination" in grouped else ()
    if derivation is not None:
        if set(grouped) - {"space"}:
            raise _fail(f"derived algebra {name} may only declare spaces", meta)
        base, bindings = derivation
        return AlgebraDef(name, (), (), (), spaces=values("space"), base=base, bindings=bindings)
    if not generators:
        raise _fail(f"algebra {name} declares no generators", grouped.get("generators", [meta])[0])
    defn = AlgebraDef(name, params, generators, values("bracket"), values("casimir"), values("let"),
                      elimination, values("cartan"), values("involution"), values("space"))
    _validate(defn, grouped)
    return defn


def _validate(defn: AlgebraDef, grouped: Dict[str, List[_Statement]]) -> None:
    gens = set(defn.generators)
    if len(gens) != len(defn.generators):
        raise _fail("duplicate generator names", grouped["generators"][0])
    param_names = [p.name for p in defn.params]
    if len(set(param_names)) != len(param_names):
        raise _fail("duplicate parameter names", grouped["params"][0])
    clash = gens & set(param_names)
    if clash:
        raise _fail(f"names used both as generator and parameter: {sorted(clash)}", grouped["params"][0])
    for name in defn.elimination:
        if name not in gens:
            raise _fail(f"unknown generator {name!r} in elimination order", grouped["elimination"][0])
    scalar_scope = set(param_names) | {IMAGINARY}
    for param, statement in ((p, grouped["params"][0]) for p in defn.params if p.definition is not None):
        unknown = names_in(param.definition) - scalar_scope
        if unknown:
            raise _fail(f"unknown symbol {sorted(unknown)[0]!r} in definition of {param.name}", statement)
    scope = defn.declared_names() | {IMAGINARY}
    for statement in grouped.get("let", []) + grouped.get("casimir", []) + grouped.get("bracket", []):
        expr = statement.value.expr if statement.kind != "bracket" else statement.value.rhs
        calls = {node.func for node in _calls(expr)}
        for func in calls - set(FUNCTIONS):
            raise _fail(f"unknown function {func!r}", statement)
        unknown = names_in(expr) - scope
        if unknown:
            raise _fail(f"unknown symbol {sorted(unknown)[0]!r}", statement)
    seen: Dict[frozenset, Tuple[BracketDecl, _Statement]] = {}
    for statement in grouped.get("bracket", []):
        decl = statement.value
        for gen in (decl.left, decl.right):
            if gen not in gens:
                raise _fail(f"unknown generator {gen!r} in bracket", statement)
        if decl.left == decl.right:
            raise _fail(f"bracket [{decl.left},{decl.right}] of a generator with itself", statement)
        key = frozenset((decl.left, decl.right))
        if key in seen:
            first = seen[key][0]
            same_order = (first.left, first.right) == (decl.left, decl.right)
            consistent = not same_order and (decl.rhs == Neg(first.rhs) or first.rhs == Neg(decl.rhs))
            kind = "duplicate bracket" if same_order or consistent else "non-antisymmetric duplicate bracket"
            raise _fail(f"{kind} [{decl.left},{decl.right}] (first declared as [{first.left},{first.right}])",
                        statement)
        seen[key] = (decl, statement)
    for statement in grouped.get("cartan", []):
        split = statement.value
        if set(split.p) | set(split.h) != gens or set(split.p) & set(split.h):
            raise _fail(f"cartan split {split.label} does not partition the generators", statement)
    for statement in grouped.get("involution", []):
        for source, _, target in statement.value.images:
            if source not in gens or target not in gens:
                raise _fail(f"unknown generator in involution {statement.value.name}", statement)


def _calls(expr: Expr):
    return [node for node in walk(expr) if isinstance(node, Call)]


def _translate(error: UnexpectedInput, text: str) -> AlgebraParseError:
    context = error.get_context(text).strip().splitlines()[0] if text else ""
    return AlgebraParseError(f"syntax error near {context!r}", error.line, error.column)


def parse_algebras(text: str) -> List[AlgebraDef]:
    """Parse every algebra block in ``text``."""
    try:
        tree = _PARSER.parse(text, start="start")
        return AlgebraTransformer().transform(tree)
    except UnexpectedInput as error:
        raise _translate(error, text) from None
    except VisitError as error:
        if isinstance(error.orig_exc, AlgebraParseError):
            raise error.orig_exc from None
        raise


def parse_algebra(text: str) -> AlgebraDef:
    algebras = parse_algebras(text)
    if len(algebras) != 1:
        raise AlgebraParseError(f"expected one algebra, found {len(algebras)}")
    return algebras[0]


def parse_expression(text: str) -> Expr:
    try:
        return AlgebraTransformer().transform(_PARSER.parse(text, start="expr"))
    except UnexpectedInput as error:
        raise _translate(error, text) from None


def _list(names) -> str:
    return "[" + ", ".join(names) + "]"


def render_algebra(defn: AlgebraDef) -> str:
    """Canonical source text; parsing it gives back an equal definition."""
    if defn.base is not None:
        bindings = ", ".join(f"{n} := {render_expr(e)}" for n, e in defn.bindings)
        lines = [f"algebra {defn.name} from {defn.base} with {bindings} {{"]
        lines += [_render_space(s) for s in defn.spaces]
        return "\n".join(lines + ["}"]) + "\n"
    params = ", ".join(p.name if p.definition is None else f"{p.name} := {render_expr(p.definition)}"
                       for p in defn.params)
    lines = [f"algebra {defn.name} {{", f"  params [{params}];", f"  generators {_list(defn.generators)};"]
    if defn.elimination:
        lines.append(f"  elimination {_list(defn.elimination)};")
    lines += [f"  let {l.name} = {render_expr(l.expr)};" for l in defn.lets]
    lines += [f"  bracket [{b.left}, {b.right}] = {render_expr(b.rhs)};" for b in defn.brackets]
    lines += [f"  casimir {c.name} = {render_expr(c.expr)} eigenvalue {c.eigenvalue};" for c in defn.casimirs]
    lines += [f"  cartan {s.label}: p={_list(s.p)}, h={_list(s.h)} pattern={s.pattern.value};" for s in defn.cartans]
    for inv in defn.involutions:
        maps = ", ".join(f"{src}->{'-' if sign < 0 else ''}{dst}" for src, sign, dst in inv.images)
        lines.append(f"  involution {inv.name}: {maps};")
    lines += [_render_space(s) for s in defn.spaces]
    return "\n".join(lines + ["}"]) + "\n"


def _render_space(space: SpaceRecord) -> str:
    model = f' model="{space.model}"' if space.model is not None else ""
    return (f"  space {space.label}: dim={space.dim} curvature={render_expr(space.curvature)}"
            f" rank={space.rank}{model};")
