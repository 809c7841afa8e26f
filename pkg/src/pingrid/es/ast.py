"""AST node definitions for the script dialect."""

from __future__ import annotations

from dataclasses import dataclass, field


class Node:
    __slots__ = ()


# ---- patterns (binding targets) ----


@dataclass(frozen=True)
class IdentPat(Node):
    name: str


@dataclass(frozen=True)
class ObjectPatProp(Node):
    key: str
    target: "Pattern"
    default: "Expr | None" = None


@dataclass(frozen=True)
class ObjectPat(Node):
    props: tuple[ObjectPatProp, ...]
    rest: IdentPat | None = None


@dataclass(frozen=True)
class ArrayPat(Node):
    elements: tuple["PatternElement | None", ...]
    rest: "Pattern | None" = None


@dataclass(frozen=True)
class PatternElement(Node):
    target: "Pattern"
    default: "Expr | None" = None


Pattern = IdentPat | ObjectPat | ArrayPat


# ---- expressions ----


@dataclass(frozen=True)
class Num(Node):
    value: float


@dataclass(frozen=True)
class Str(Node):
    value: str


@dataclass(frozen=True)
class Template(Node):
    quasis: tuple[str, ...]
    exprs: tuple["Expr", ...]


@dataclass(frozen=True)
class Bool(Node):
    value: bool


@dataclass(frozen=True)
class Null(Node):
    pass


@dataclass(frozen=True)
class Ident(Node):
    name: str


@dataclass(frozen=True)
class This(Node):
    pass


@dataclass(frozen=True)
class Spread(Node):
    arg: "Expr"


@dataclass(frozen=True)
class ArrayLit(Node):
    elements: tuple["Expr | Spread | None", ...]


@dataclass(frozen=True)
class ObjectProp(Node):
    key: "str | Expr"  # str for fixed names, Expr for computed keys
    value: "Expr"
    computed: bool = False


@dataclass(frozen=True)
class ObjectLit(Node):
    props: tuple["ObjectProp | Spread", ...]


@dataclass(frozen=True)
class Param(Node):
    pattern: Pattern
    default: "Expr | None" = None
    rest: bool = False


@dataclass(frozen=True)
class FuncLit(Node):
    name: str | None
    params: tuple[Param, ...]
    body: tuple["Stmt", ...]
    expr_body: "Expr | None" = None  # arrow with expression body
    is_arrow: bool = False


@dataclass(frozen=True)
class Unary(Node):
    op: str
    arg: "Expr"


@dataclass(frozen=True)
class Update(Node):
    op: str
    prefix: bool
    arg: "Expr"


@dataclass(frozen=True)
class Binary(Node):
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Logical(Node):
    op: str  # '&&' | '||' | '??'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Conditional(Node):
    test: "Expr"
    cons: "Expr"
    alt: "Expr"


@dataclass(frozen=True)
class Assign(Node):
    op: str  # '=', '+=', ...
    target: "Expr"
    value: "Expr"


@dataclass(frozen=True)
class Call(Node):
    callee: "Expr"
    args: tuple["Expr | Spread", ...]
    optional: bool = False


@dataclass(frozen=True)
class New(Node):
    callee: "Expr"
    args: tuple["Expr | Spread", ...]


@dataclass(frozen=True)
class Member(Node):
    obj: "Expr"
    prop: "str | Expr"  # str for .name, Expr for [expr]
    computed: bool
    optional: bool = False


@dataclass(frozen=True)
class Sequence(Node):
    exprs: tuple["Expr", ...]


Expr = (
    Num | Str | Template | Bool | Null | Ident | This | ArrayLit | ObjectLit
    | FuncLit | Unary | Update | Binary | Logical | Conditional | Assign
    | Call | New | Member | Sequence
)


# ---- statements ----


@dataclass(frozen=True)
class VarDecl(Node):
    kind: str  # 'var' | 'let' | 'const'
    decls: tuple[tuple[Pattern, "Expr | None"], ...]


@dataclass(frozen=True)
class FuncDecl(Node):
    func: FuncLit


@dataclass(frozen=True)
class ExprStmt(Node):
    expr: "Expr"


@dataclass(frozen=True)
class Return(Node):
    arg: "Expr | None"


@dataclass(frozen=True)
class If(Node):
    test: "Expr"
    cons: "Stmt"
    alt: "Stmt | None"


@dataclass(frozen=True)
class For(Node):
    init: "Stmt | None"
    test: "Expr | None"
    update: "Expr | None"
    body: "Stmt"


@dataclass(frozen=True)
class ForInOf(Node):
    kind: str  # 'var' | 'let' | 'const' | '' (bare target)
    pattern: Pattern
    iterable: "Expr"
    body: "Stmt"
    of: bool  # True for for-of, False for for-in


@dataclass(frozen=True)
class While(Node):
    test: "Expr"
    body: "Stmt"


@dataclass(frozen=True)
class DoWhile(Node):
    body: "Stmt"
    test: "Expr"


@dataclass(frozen=True)
class Break(Node):
    pass


@dataclass(frozen=True)
class Continue(Node):
    pass


@dataclass(frozen=True)
class Block(Node):
    body: tuple["Stmt", ...]


@dataclass(frozen=True)
class Throw(Node):
    arg: "Expr"


@dataclass(frozen=True)
class Try(Node):
    block: Block
    param: Pattern | None
    handler: Block | None
    finalizer: Block | None


@dataclass(frozen=True)
class SwitchCase(Node):
    test: "Expr | None"  # None for default
    body: tuple["Stmt", ...]


@dataclass(frozen=True)
class Switch(Node):
    disc: "Expr"
    cases: tuple[SwitchCase, ...]


@dataclass(frozen=True)
class Empty(Node):
    pass


Stmt = (
    VarDecl | FuncDecl | ExprStmt | Return | If | For | ForInOf | While
    | DoWhile | Break | Continue | Block | Throw | Try | Switch | Empty
)


@dataclass(frozen=True)
class Program(Node):
    body: tuple[Stmt, ...]
