"""Recursive-descent parser for the script dialect.

Covers the surface the script generators actually emit: functions (incl.
arrows and IIFEs), const/let/var with object and array destructuring,
the full operator set, template literals, loops, try/catch, and switch.
Class declarations, generators, async, regex literals, and labelled
statements are outside the dialect and fail with a syntax error.
"""

from __future__ import annotations

from . import ast as A
from .errors import ESSyntaxError
from .lexer import TemplateParts, Token, tokenize

_MAX_DEPTH = 120

_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "**=", "<<=", ">>=", ">>>=", "&=", "|=", "^=", "&&=", "||=", "??="}

# (operator, precedence); higher binds tighter
_BINARY_PREC = {
    "??": 1,
    "||": 2,
    "&&": 3,
    "|": 4,
    "^": 5,
    "&": 6,
    "==": 7, "!=": 7, "===": 7, "!==": 7,
    "<": 8, ">": 8, "<=": 8, ">=": 8, "in": 8, "instanceof": 8,
    "<<": 9, ">>": 9, ">>>": 9,
    "+": 10, "-": 10,
    "*": 11, "/": 11, "%": 11,
    "**": 12,
}


class Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.depth = 0

    # ---- token plumbing ----

    def peek(self, offset: int = 0) -> Token:
        i = min(self.i + offset, len(self.toks) - 1)
        return self.toks[i]

    def next(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at_punct(self, *values: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.value in values

    def at_kw(self, *values: str) -> bool:
        tok = self.peek()
        return tok.kind == "kw" and tok.value in values

    def expect_punct(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.value != value:
            raise self.error(f"expected {value!r}, found {tok.value!r}")
        return self.next()

    def expect_kw(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind != "kw" or tok.value != value:
            raise self.error(f"expected keyword {value!r}, found {tok.value!r}")
        return self.next()

    def expect_ident(self) -> str:
        tok = self.peek()
        if tok.kind == "ident":
            return str(self.next().value)
        # contextual keywords usable as names
        if tok.kind == "kw" and tok.value in ("get", "set", "of", "static", "async"):
            return str(self.next().value)
        raise self.error(f"expected identifier, found {tok.value!r}")

    def error(self, message: str) -> ESSyntaxError:
        tok = self.peek()
        return ESSyntaxError(message, tok.line, tok.col)

    def _enter(self) -> None:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise self.error("expression nesting too deep")

    def _leave(self) -> None:
        self.depth -= 1

    # ---- ASI ----

    def consume_semicolon(self) -> None:
        if self.at_punct(";"):
            self.next()
            return
        tok = self.peek()
        if tok.kind == "eof" or (tok.kind == "punct" and tok.value == "}") or tok.nl_before:
            return
        raise self.error(f"expected ';' before {tok.value!r}")

    # ---- program / statements ----

    def parse_program(self) -> A.Program:
        body: list[A.Stmt] = []
        while self.peek().kind != "eof":
            body.append(self.parse_statement())
        return A.Program(tuple(body))

    def parse_statement(self) -> A.Stmt:
        tok = self.peek()
        if tok.kind == "punct":
            if tok.value == "{":
                return self.parse_block()
            if tok.value == ";":
                self.next()
                return A.Empty()
        if tok.kind == "kw":
            kw = tok.value
            if kw in ("var", "let", "const"):
                decl = self.parse_var_decl()
                self.consume_semicolon()
                return decl
            if kw == "function":
                return self.parse_func_decl()
            if kw == "return":
                return self.parse_return()
            if kw == "if":
                return self.parse_if()
            if kw == "for":
                return self.parse_for()
            if kw == "while":
                return self.parse_while()
            if kw == "do":
                return self.parse_do_while()
            if kw == "break":
                self.next()
                self.consume_semicolon()
                return A.Break()
            if kw == "continue":
                self.next()
                self.consume_semicolon()
                return A.Continue()
            if kw == "throw":
                self.next()
                if self.peek().nl_before:
                    raise self.error("newline not allowed after 'throw'")
                arg = self.parse_expression()
                self.consume_semicolon()
                return A.Throw(arg)
            if kw == "try":
                return self.parse_try()
            if kw == "switch":
                return self.parse_switch()
            if kw in ("class", "yield", "await"):
                raise self.error(f"'{kw}' is not supported in this dialect")
        expr = self.parse_expression()
        self.consume_semicolon()
        return A.ExprStmt(expr)

    def parse_block(self) -> A.Block:
        self.expect_punct("{")
        body: list[A.Stmt] = []
        while not self.at_punct("}"):
            if self.peek().kind == "eof":
                raise self.error("unterminated block")
            body.append(self.parse_statement())
        self.expect_punct("}")
        return A.Block(tuple(body))

    def parse_var_decl(self, allow_in: bool = True) -> A.VarDecl:
        kind = str(self.next().value)
        decls: list[tuple[A.Pattern, A.Expr | None]] = []
        while True:
            pattern = self.parse_binding_pattern()
            init: A.Expr | None = None
            if self.at_punct("="):
                self.next()
                init = self.parse_assignment(allow_in=allow_in)
            elif kind == "const" and allow_in:
                raise self.error("const declaration requires an initializer")
            decls.append((pattern, init))
            if self.at_punct(","):
                self.next()
                continue
            break
        return A.VarDecl(kind, tuple(decls))

    def parse_binding_pattern(self) -> A.Pattern:
        if self.at_punct("{"):
            return self.parse_object_pattern()
        if self.at_punct("["):
            return self.parse_array_pattern()
        return A.IdentPat(self.expect_ident())

    def parse_object_pattern(self) -> A.ObjectPat:
        self.expect_punct("{")
        props: list[A.ObjectPatProp] = []
        rest: A.IdentPat | None = None
        while not self.at_punct("}"):
            if self.at_punct("..."):
                self.next()
                rest = A.IdentPat(self.expect_ident())
                break
            tok = self.peek()
            if tok.kind == "str":
                key = str(self.next().value)
            else:
                key = self.expect_ident()
            target: A.Pattern = A.IdentPat(key)
            if self.at_punct(":"):
                self.next()
                target = self.parse_binding_pattern()
            default: A.Expr | None = None
            if self.at_punct("="):
                self.next()
                default = self.parse_assignment()
            props.append(A.ObjectPatProp(key, target, default))
            if self.at_punct(","):
                self.next()
        self.expect_punct("}")
        return A.ObjectPat(tuple(props), rest)

    def parse_array_pattern(self) -> A.ArrayPat:
        self.expect_punct("[")
        elements: list[A.PatternElement | None] = []
        rest: A.Pattern | None = None
        while not self.at_punct("]"):
            if self.at_punct(","):
                self.next()
                elements.append(None)
                continue
            if self.at_punct("..."):
                self.next()
                rest = self.parse_binding_pattern()
                break
            target = self.parse_binding_pattern()
            default: A.Expr | None = None
            if self.at_punct("="):
                self.next()
                default = self.parse_assignment()
            elements.append(A.PatternElement(target, default))
            if self.at_punct(","):
                self.next()
        self.expect_punct("]")
        return A.ArrayPat(tuple(elements), rest)

    def parse_func_decl(self) -> A.FuncDecl:
        func = self.parse_function_literal(require_name=True)
        return A.FuncDecl(func)

    def parse_function_literal(self, require_name: bool) -> A.FuncLit:
        self.expect_kw("function")
        if self.at_punct("*"):
            raise self.error("generator functions are not supported")
        name: str | None = None
        if self.peek().kind == "ident" or (require_name and self.peek().kind == "kw"):
            name = self.expect_ident()
        elif require_name:
            raise self.error("function declaration requires a name")
        params = self.parse_params()
        body = self.parse_block()
        return A.FuncLit(name=name, params=params, body=body.body)

    def parse_params(self) -> tuple[A.Param, ...]:
        self.expect_punct("(")
        params: list[A.Param] = []
        while not self.at_punct(")"):
            rest = False
            if self.at_punct("..."):
                self.next()
                rest = True
            pattern = self.parse_binding_pattern()
            default: A.Expr | None = None
            if self.at_punct("="):
                self.next()
                default = self.parse_assignment()
            params.append(A.Param(pattern, default, rest))
            if self.at_punct(","):
                self.next()
        self.expect_punct(")")
        return tuple(params)

    def parse_return(self) -> A.Return:
        self.expect_kw("return")
        tok = self.peek()
        if tok.nl_before or tok.kind == "eof" or (tok.kind == "punct" and tok.value in (";", "}")):
            self.consume_semicolon()
            return A.Return(None)
        arg = self.parse_expression()
        self.consume_semicolon()
        return A.Return(arg)

    def parse_if(self) -> A.If:
        self.expect_kw("if")
        self.expect_punct("(")
        test = self.parse_expression()
        self.expect_punct(")")
        cons = self.parse_statement()
        alt: A.Stmt | None = None
        if self.at_kw("else"):
            self.next()
            alt = self.parse_statement()
        return A.If(test, cons, alt)

    def parse_for(self) -> A.Stmt:
        self.expect_kw("for")
        self.expect_punct("(")
        init: A.Stmt | None = None
        if self.at_punct(";"):
            self.next()
        elif self.at_kw("var", "let", "const"):
            decl = self.parse_var_decl(allow_in=False)
            if (self.at_kw("in") or (self.peek().kind in ("ident", "kw") and self.peek().value == "of")) and len(decl.decls) == 1:
                of = self.peek().value == "of"
                self.next()
                iterable = self.parse_assignment()
                self.expect_punct(")")
                body = self.parse_statement()
                return A.ForInOf(decl.kind, decl.decls[0][0], iterable, body, of=of)
            self.expect_punct(";")
            init = decl
        else:
            expr = self.parse_expression(allow_in=False)
            if self.at_kw("in") or (self.peek().kind in ("ident", "kw") and self.peek().value == "of"):
                of = self.peek().value == "of"
                self.next()
                if not isinstance(expr, A.Ident):
                    raise self.error("for-in/of target must be a simple identifier here")
                iterable = self.parse_assignment()
                self.expect_punct(")")
                body = self.parse_statement()
                return A.ForInOf("", A.IdentPat(expr.name), iterable, body, of=of)
            self.expect_punct(";")
            init = A.ExprStmt(expr)
        test: A.Expr | None = None
        if not self.at_punct(";"):
            test = self.parse_expression()
        self.expect_punct(";")
        update: A.Expr | None = None
        if not self.at_punct(")"):
            update = self.parse_expression()
        self.expect_punct(")")
        body = self.parse_statement()
        return A.For(init, test, update, body)

    def parse_while(self) -> A.While:
        self.expect_kw("while")
        self.expect_punct("(")
        test = self.parse_expression()
        self.expect_punct(")")
        body = self.parse_statement()
        return A.While(test, body)

    def parse_do_while(self) -> A.DoWhile:
        self.expect_kw("do")
        body = self.parse_statement()
        self.expect_kw("while")
        self.expect_punct("(")
        test = self.parse_expression()
        self.expect_punct(")")
        self.consume_semicolon()
        return A.DoWhile(body, test)

    def parse_try(self) -> A.Try:
        self.expect_kw("try")
        block = self.parse_block()
        param: A.Pattern | None = None
        handler: A.Block | None = None
        finalizer: A.Block | None = None
        if self.at_kw("catch"):
            self.next()
            if self.at_punct("("):
                self.next()
                param = self.parse_binding_pattern()
                self.expect_punct(")")
            handler = self.parse_block()
        if self.at_kw("finally"):
            self.next()
            finalizer = self.parse_block()
        if handler is None and finalizer is None:
            raise self.error("try requires catch or finally")
        return A.Try(block, param, handler, finalizer)

    def parse_switch(self) -> A.Switch:
        self.expect_kw("switch")
        self.expect_punct("(")
        disc = self.parse_expression()
        self.expect_punct(")")
        self.expect_punct("{")
        cases: list[A.SwitchCase] = []
        while not self.at_punct("}"):
            if self.at_kw("case"):
                self.next()
                test: A.Expr | None = self.parse_expression()
            elif self.at_kw("default"):
                self.next()
                test = None
            else:
                raise self.error("expected 'case' or 'default'")
            self.expect_punct(":")
            body: list[A.Stmt] = []
            while not (self.at_kw("case") or self.at_kw("default") or self.at_punct("}")):
                body.append(self.parse_statement())
            cases.append(A.SwitchCase(test, tuple(body)))
        self.expect_punct("}")
        return A.Switch(disc, tuple(cases))

    # ---- expressions ----

    def parse_expression(self, allow_in: bool = True) -> A.Expr:
        expr = self.parse_assignment(allow_in=allow_in)
        if self.at_punct(","):
            exprs = [expr]
            while self.at_punct(","):
                self.next()
                exprs.append(self.parse_assignment(allow_in=allow_in))
            return A.Sequence(tuple(exprs))
        return expr

    def parse_assignment(self, allow_in: bool = True) -> A.Expr:
        self._enter()
        try:
            arrow = self.try_parse_arrow()
            if arrow is not None:
                return arrow
            left = self.parse_conditional(allow_in=allow_in)
            tok = self.peek()
            if tok.kind == "punct" and tok.value in _ASSIGN_OPS:
                if not isinstance(left, (A.Ident, A.Member)):
                    raise self.error("invalid assignment target")
                op = str(self.next().value)
                value = self.parse_assignment(allow_in=allow_in)
                return A.Assign(op, left, value)
            return left
        finally:
            self._leave()

    def try_parse_arrow(self) -> A.FuncLit | None:
        tok = self.peek()
        # ident => ...
        if tok.kind == "ident" and self.peek(1).kind == "punct" and self.peek(1).value == "=>":
            name = self.expect_ident()
            self.next()  # =>
            return self.finish_arrow((A.Param(A.IdentPat(name)),))
        # ( params ) => ...
        if tok.kind == "punct" and tok.value == "(":
            end = self._matching_paren(self.i)
            if end is not None:
                after = self.toks[end + 1] if end + 1 < len(self.toks) else self.toks[-1]
                if after.kind == "punct" and after.value == "=>":
                    params = self.parse_params()
                    self.expect_punct("=>")
                    return self.finish_arrow(params)
        return None

    def _matching_paren(self, start: int) -> int | None:
        depth = 0
        for j in range(start, len(self.toks)):
            tok = self.toks[j]
            if tok.kind != "punct":
                continue
            if tok.value == "(":
                depth += 1
            elif tok.value == ")":
                depth -= 1
                if depth == 0:
                    return j
        return None

    def finish_arrow(self, params: tuple[A.Param, ...]) -> A.FuncLit:
        if self.at_punct("{"):
            body = self.parse_block()
            return A.FuncLit(None, params, body.body, is_arrow=True)
        expr = self.parse_assignment()
        return A.FuncLit(None, params, (), expr_body=expr, is_arrow=True)

    def parse_conditional(self, allow_in: bool = True) -> A.Expr:
        test = self.parse_binary(0, allow_in=allow_in)
        if self.at_punct("?"):
            self.next()
            cons = self.parse_assignment()
            self.expect_punct(":")
            alt = self.parse_assignment(allow_in=allow_in)
            return A.Conditional(test, cons, alt)
        return test

    def parse_binary(self, min_prec: int, allow_in: bool = True) -> A.Expr:
        self._enter()
        try:
            left = self.parse_unary()
            while True:
                tok = self.peek()
                op: str | None = None
                if tok.kind == "punct" and tok.value in _BINARY_PREC:
                    op = str(tok.value)
                elif tok.kind == "kw" and tok.value in ("in", "instanceof"):
                    if tok.value == "in" and not allow_in:
                        break
                    op = str(tok.value)
                if op is None:
                    break
                prec = _BINARY_PREC[op]
                if prec < min_prec:
                    break
                self.next()
                # ** is right-associative; everything else left
                next_min = prec if op == "**" else prec + 1
                right = self.parse_binary(next_min, allow_in=allow_in)
                if op in ("&&", "||", "??"):
                    left = A.Logical(op, left, right)
                else:
                    left = A.Binary(op, left, right)
            return left
        finally:
            self._leave()

    def parse_unary(self) -> A.Expr:
        tok = self.peek()
        if tok.kind == "punct" and tok.value in ("!", "~", "+", "-"):
            self.next()
            return A.Unary(str(tok.value), self.parse_unary())
        if tok.kind == "kw" and tok.value in ("typeof", "void", "delete"):
            self.next()
            return A.Unary(str(tok.value), self.parse_unary())
        if tok.kind == "punct" and tok.value in ("++", "--"):
            self.next()
            arg = self.parse_unary()
            if not isinstance(arg, (A.Ident, A.Member)):
                raise self.error("invalid increment target")
            return A.Update(str(tok.value), True, arg)
        return self.parse_postfix()

    def parse_postfix(self) -> A.Expr:
        expr = self.parse_call_member()
        tok = self.peek()
        if tok.kind == "punct" and tok.value in ("++", "--") and not tok.nl_before:
            if not isinstance(expr, (A.Ident, A.Member)):
                raise self.error("invalid increment target")
            self.next()
            return A.Update(str(tok.value), False, expr)
        return expr

    def parse_call_member(self) -> A.Expr:
        if self.at_kw("new"):
            self.next()
            callee = self.parse_member_only(self.parse_primary())
            args: tuple[A.Expr | A.Spread, ...] = ()
            if self.at_punct("("):
                args = self.parse_args()
            expr: A.Expr = A.New(callee, args)
        else:
            expr = self.parse_primary()
        return self.parse_member_chain(expr)

    def parse_member_only(self, expr: A.Expr) -> A.Expr:
        # member accesses without calls (for `new a.b.C(...)`)
        while True:
            if self.at_punct("."):
                self.next()
                expr = A.Member(expr, self.expect_member_name(), computed=False)
            elif self.at_punct("["):
                self.next()
                prop = self.parse_expression()
                self.expect_punct("]")
                expr = A.Member(expr, prop, computed=True)
            else:
                return expr

    def expect_member_name(self) -> str:
        tok = self.peek()
        if tok.kind in ("ident", "kw"):
            self.next()
            return str(tok.value)
        raise self.error(f"expected property name, found {tok.value!r}")

    def parse_member_chain(self, expr: A.Expr) -> A.Expr:
        while True:
            if self.at_punct("."):
                self.next()
                expr = A.Member(expr, self.expect_member_name(), computed=False)
            elif self.at_punct("?."):
                self.next()
                if self.at_punct("("):
                    expr = A.Call(expr, self.parse_args(), optional=True)
                elif self.at_punct("["):
                    self.next()
                    prop = self.parse_expression()
                    self.expect_punct("]")
                    expr = A.Member(expr, prop, computed=True, optional=True)
                else:
                    expr = A.Member(expr, self.expect_member_name(), computed=False, optional=True)
            elif self.at_punct("["):
                self.next()
                prop = self.parse_expression()
                self.expect_punct("]")
                expr = A.Member(expr, prop, computed=True)
            elif self.at_punct("("):
                expr = A.Call(expr, self.parse_args())
            elif self.peek().kind == "template":
                raise self.error("tagged templates are not supported")
            else:
                return expr

    def parse_args(self) -> tuple[A.Expr | A.Spread, ...]:
        self.expect_punct("(")
        args: list[A.Expr | A.Spread] = []
        while not self.at_punct(")"):
            if self.at_punct("..."):
                self.next()
                args.append(A.Spread(self.parse_assignment()))
            else:
                args.append(self.parse_assignment())
            if self.at_punct(","):
                self.next()
        self.expect_punct(")")
        return tuple(args)

    def parse_primary(self) -> A.Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return A.Num(float(tok.value))  # type: ignore[arg-type]
        if tok.kind == "str":
            self.next()
            return A.Str(str(tok.value))
        if tok.kind == "template":
            self.next()
            return self.build_template(tok.value)  # type: ignore[arg-type]
        if tok.kind == "ident":
            self.next()
            return A.Ident(str(tok.value))
        if tok.kind == "kw":
            kw = tok.value
            if kw == "true":
                self.next()
                return A.Bool(True)
            if kw == "false":
                self.next()
                return A.Bool(False)
            if kw == "null":
                self.next()
                return A.Null()
            if kw == "this":
                self.next()
                return A.This()
            if kw == "function":
                return self.parse_function_literal(require_name=False)
            if kw in ("get", "set", "of", "static", "async"):
                self.next()
                return A.Ident(str(kw))
            raise self.error(f"unexpected keyword {kw!r}")
        if tok.kind == "punct":
            if tok.value == "(":
                self.next()
                expr = self.parse_expression()
                self.expect_punct(")")
                return expr
            if tok.value == "[":
                return self.parse_array_literal()
            if tok.value == "{":
                return self.parse_object_literal()
        raise self.error(f"unexpected token {tok.value!r}")

    def build_template(self, parts: TemplateParts) -> A.Expr:
        exprs: list[A.Expr] = []
        for idx, source in enumerate(parts.expr_sources):
            sub = Parser(tokenize(source))
            try:
                expr = sub.parse_expression()
            except ESSyntaxError as exc:
                raise ESSyntaxError(f"in template expression: {exc}") from None
            if sub.peek().kind != "eof":
                raise self.error("trailing tokens in template expression")
            exprs.append(expr)
        return A.Template(parts.quasis, tuple(exprs))

    def parse_array_literal(self) -> A.ArrayLit:
        self.expect_punct("[")
        elements: list[A.Expr | A.Spread | None] = []
        while not self.at_punct("]"):
            if self.at_punct(","):
                self.next()
                elements.append(None)
                continue
            if self.at_punct("..."):
                self.next()
                elements.append(A.Spread(self.parse_assignment()))
            else:
                elements.append(self.parse_assignment())
            if self.at_punct(","):
                self.next()
        self.expect_punct("]")
        return A.ArrayLit(tuple(elements))

    def parse_object_literal(self) -> A.ObjectLit:
        self.expect_punct("{")
        props: list[A.ObjectProp | A.Spread] = []
        while not self.at_punct("}"):
            if self.at_punct("..."):
                self.next()
                props.append(A.Spread(self.parse_assignment()))
            else:
                props.append(self.parse_object_prop())
            if self.at_punct(","):
                self.next()
            elif not self.at_punct("}"):
                raise self.error("expected ',' or '}' in object literal")
        self.expect_punct("}")
        return A.ObjectLit(tuple(props))

    def parse_object_prop(self) -> A.ObjectProp:
        tok = self.peek()
        # computed key
        if tok.kind == "punct" and tok.value == "[":
            self.next()
            key_expr = self.parse_assignment()
            self.expect_punct("]")
            self.expect_punct(":")
            return A.ObjectProp(key_expr, self.parse_assignment(), computed=True)
        if tok.kind == "str":
            self.next()
            key = str(tok.value)
        elif tok.kind == "num":
            self.next()
            key = _number_key(float(tok.value))  # type: ignore[arg-type]
        else:
            key = self.expect_member_name()
        # method shorthand: name(params) { ... }
        if self.at_punct("("):
            params = self.parse_params()
            body = self.parse_block()
            return A.ObjectProp(key, A.FuncLit(key, params, body.body))
        if self.at_punct(":"):
            self.next()
            return A.ObjectProp(key, self.parse_assignment())
        # shorthand { name }
        return A.ObjectProp(key, A.Ident(key))


def _number_key(n: float) -> str:
    if n == int(n) and abs(n) < 1e21:
        return str(int(n))
    return repr(n)


def parse(source: str) -> A.Program:
    parser = Parser(tokenize(source))
    program = parser.parse_program()
    if parser.peek().kind != "eof":
        raise parser.error("trailing tokens after program")
    return program
