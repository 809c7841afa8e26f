"""Budgeted closure-compiling evaluator for the script dialect.

Each program is compiled once into a tree of Python closures; running a
closure counts statements, loop iterations, and calls against an instruction
budget so runaway scripts terminate deterministically. The only ambient
state a script can reach is what the realm's globals expose: Math (with a
seeded PRNG), JSON, console, and whatever host objects the embedder binds.
There is no Date, no eval, no Function constructor, and no globalThis.
"""

from __future__ import annotations

import math
import random
from typing import Callable

from . import ast as A
from .errors import (
    BudgetExceededError,
    ESError,
    ESRuntimeError,
    ESSyntaxError,
    ResourceLimitError,
    StackDepthError,
)
from .parser import parse
from .values import (
    NO_THIS,
    UNDEF,
    BoundMethod,
    HostFunction,
    HostObject,
    JSArray,
    JSFunction,
    JSObject,
    Scope,
    is_callable,
    loose_equals,
    number_to_string,
    strict_equals,
    to_boolean,
    to_int32,
    to_number,
    to_string,
    to_uint32,
    type_of,
)

BREAK = object()
CONT = object()

_RET = "ret"


class ESThrowSignal(Exception):
    """A value thrown by script code; catchable by script try/catch."""

    def __init__(self, value: object):
        super().__init__(to_display(value))
        self.value = value


def to_display(v: object) -> str:
    """Human-readable rendering for error consoles and logs."""
    if isinstance(v, JSObject):
        name = v.props.get("name")
        message = v.props.get("message")
        if isinstance(name, str) and message is not None:
            return f"{name}: {to_string(message)}"
    try:
        return to_string(v)
    except ESError:
        return repr(v)


class Interp:
    """One realm: a compiled-program evaluator with its own globals, budget,
    allocation caps, and seeded PRNG."""

    def __init__(
        self,
        budget: int = 5_000_000,
        max_array: int = 100_000,
        max_string: int = 1_000_000,
        max_depth: int = 64,
        rng_seed: int = 0,
    ):
        self.budget = budget
        self.steps = 0
        self.max_array = max_array
        self.max_string = max_string
        self.max_depth = max_depth
        self.depth = 0
        self.rng = random.Random(rng_seed)
        self.console_log: list[str] = []
        self.global_scope = Scope(this_val=UNDEF)
        self._install_builtins()

    # ---- public API ----

    def run(self, source: str) -> None:
        """Parse and execute a whole program in the realm's global scope."""
        program = parse(source)
        runner = self._compile_body(program.body)
        try:
            signal = runner(self.global_scope)
        except RecursionError:
            raise StackDepthError("interpreter stack exhausted") from None
        if signal is not None and signal is not BREAK and signal is not CONT:
            return  # stray top-level return: tolerate

    def global_get(self, name: str):
        try:
            return self.global_scope.lookup(name)
        except ESRuntimeError:
            return UNDEF

    def bind_global(self, name: str, value: object) -> None:
        self.global_scope.declare(name, value)

    def reset_budget(self, budget: int) -> None:
        self.budget = budget
        self.steps = 0

    def call(self, fn: object, args: list, this: object = UNDEF):
        try:
            return self.call_value(fn, this, args)
        except RecursionError:
            raise StackDepthError("interpreter stack exhausted") from None

    # ---- value helpers ----

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceededError(self.budget)

    def _check_array(self, n: int) -> None:
        if n > self.max_array:
            raise ResourceLimitError(f"array allocation of {n} exceeds cap of {self.max_array}")

    def _check_string(self, n: int) -> None:
        if n > self.max_string:
            raise ResourceLimitError(f"string of {n} chars exceeds cap of {self.max_string}")

    def js_add(self, a: object, b: object):
        if isinstance(a, str) or isinstance(b, str) or isinstance(a, (JSArray, JSObject)) or isinstance(b, (JSArray, JSObject)):
            sa, sb = to_string(a), to_string(b)
            self._check_string(len(sa) + len(sb))
            return sa + sb
        return to_number(a) + to_number(b)

    def call_value(self, fn: object, this: object, args: list):
        steps = self.steps + 1
        self.steps = steps
        if steps > self.budget:
            raise BudgetExceededError(self.budget)
        if type(fn) is JSFunction:
            self.depth += 1
            if self.depth > self.max_depth:
                self.depth -= 1
                raise StackDepthError(f"call depth exceeds cap of {self.max_depth}")
            try:
                scope = Scope(parent=fn.env, this_val=NO_THIS if fn.is_arrow else this)
                fn.bind_params(self, scope, args)
                signal = fn.run_body(scope)
                if type(signal) is tuple and signal[0] == _RET:
                    return signal[1]
                return UNDEF
            finally:
                self.depth -= 1
        if type(fn) is BoundMethod:
            return self.call_value(fn.func, fn.this, args)
        if isinstance(fn, HostFunction):
            return fn.fn(self, this, args)
        raise ESRuntimeError("TypeError", f"{to_display(fn)} is not a function")

    def construct(self, fn: object, args: list):
        if isinstance(fn, HostFunction):
            # host constructors (Array, Error) handle `new` themselves
            return fn.fn(self, UNDEF, args)
        if not isinstance(fn, JSFunction):
            raise ESRuntimeError("TypeError", f"{to_display(fn)} is not a constructor")
        obj = JSObject()
        result = self.call_value(fn, obj, args)
        return result if isinstance(result, (JSObject, JSArray, HostObject)) else obj

    # ---- member access ----

    def get_member(self, obj: object, name: str):
        if type(obj) is JSObject:
            props = obj.props
            if name in props:
                return props[name]
            method = _OBJECT_PROTO.get(name)
            return BoundMethod(obj, method) if method else UNDEF
        if isinstance(obj, HostObject):
            return obj.get_prop(name)
        if obj is UNDEF or obj is None:
            raise ESRuntimeError(
                "TypeError", f"Cannot read properties of {to_string(obj)} (reading '{name}')"
            )
        if isinstance(obj, JSArray):
            if name == "length":
                return float(len(obj.elements))
            if name.lstrip("-").isdigit():
                idx = int(name)
                if 0 <= idx < len(obj.elements):
                    return obj.elements[idx]
                return UNDEF
            method = _ARRAY_PROTO.get(name)
            return BoundMethod(obj, method) if method else UNDEF
        if isinstance(obj, str):
            if name == "length":
                return float(len(obj))
            if name.lstrip("-").isdigit():
                idx = int(name)
                return obj[idx] if 0 <= idx < len(obj) else UNDEF
            method = _STRING_PROTO.get(name)
            return BoundMethod(obj, method) if method else UNDEF
        if isinstance(obj, bool):
            return UNDEF
        if isinstance(obj, float):
            method = _NUMBER_PROTO.get(name)
            return BoundMethod(obj, method) if method else UNDEF
        if isinstance(obj, (JSFunction, HostFunction, BoundMethod)):
            if isinstance(obj, _StaticsHostFunction) and name in obj.statics:
                return obj.statics[name]
            if name == "call":
                return BoundMethod(obj, _FN_CALL)
            if name == "apply":
                return BoundMethod(obj, _FN_APPLY)
            if name == "bind":
                return BoundMethod(obj, _FN_BIND)
            if name == "name":
                return getattr(obj, "name", "")
            if name == "length":
                return float(getattr(obj, "length", 0))
            return UNDEF
        raise ESRuntimeError("TypeError", f"cannot read property '{name}' of {to_display(obj)}")

    def set_member(self, obj: object, name: str, value: object) -> None:
        if isinstance(obj, JSObject):
            obj.props[name] = value
            return
        if isinstance(obj, JSArray):
            if name == "length":
                n = int(to_number(value))
                if n < 0:
                    raise ESRuntimeError("RangeError", "invalid array length")
                self._check_array(n)
                cur = len(obj.elements)
                if n < cur:
                    del obj.elements[n:]
                else:
                    obj.elements.extend([UNDEF] * (n - cur))
                return
            if name.lstrip("-").isdigit():
                idx = int(name)
                if idx < 0:
                    raise ESRuntimeError("RangeError", "negative array index")
                self._check_array(idx + 1)
                if idx >= len(obj.elements):
                    obj.elements.extend([UNDEF] * (idx + 1 - len(obj.elements)))
                obj.elements[idx] = value
                return
            raise ESRuntimeError("TypeError", f"cannot set property '{name}' on array")
        if isinstance(obj, HostObject):
            obj.set_prop(name, value)
            return
        if obj is UNDEF or obj is None:
            raise ESRuntimeError(
                "TypeError", f"Cannot set properties of {to_string(obj)} (setting '{name}')"
            )
        raise ESRuntimeError("TypeError", f"cannot set property '{name}' on {type_of(obj)}")

    def member_key(self, prop_value: object) -> str:
        if isinstance(prop_value, float):
            return number_to_string(prop_value)
        return to_string(prop_value)

    # ---- compilation: statements ----

    def _compile_body(self, stmts: tuple[A.Stmt, ...]) -> Callable[[Scope], object]:
        hoisted_funcs: list[tuple[str, Callable]] = []
        hoisted_vars: list[str] = []
        runners: list[Callable[[Scope], object]] = []
        for stmt in stmts:
            if isinstance(stmt, A.FuncDecl):
                assert stmt.func.name is not None
                hoisted_funcs.append((stmt.func.name, self.compile_func_literal(stmt.func)))
            else:
                if isinstance(stmt, A.VarDecl) and stmt.kind == "var":
                    for pattern, _ in stmt.decls:
                        hoisted_vars.extend(_pattern_names(pattern))
                runners.append(self.compile_stmt(stmt))

        def run_body(scope: Scope) -> object:
            for name in hoisted_vars:
                if name not in scope.vars:
                    scope.declare(name, UNDEF)
            for name, make_fn in hoisted_funcs:
                scope.declare(name, make_fn(scope))
            for runner in runners:
                signal = runner(scope)
                if signal is not None:
                    return signal
            return None

        return run_body

    def compile_stmt(self, stmt: A.Stmt) -> Callable[[Scope], object]:
        interp = self
        if isinstance(stmt, A.ExprStmt):
            run_expr = self.compile_expr(stmt.expr)

            def run_expr_stmt(scope: Scope):
                steps = interp.steps + 1
                interp.steps = steps
                if steps > interp.budget:
                    raise BudgetExceededError(interp.budget)
                run_expr(scope)
                return None

            return run_expr_stmt

        if isinstance(stmt, A.VarDecl):
            binders = []
            for pattern, init in stmt.decls:
                run_init = self.compile_expr(init) if init is not None else None
                bind = self.compile_pattern(pattern)
                binders.append((bind, run_init))
            if len(binders) == 1:
                bind_one, run_init_one = binders[0]

                def run_var_single(scope: Scope):
                    steps = interp.steps + 1
                    interp.steps = steps
                    if steps > interp.budget:
                        raise BudgetExceededError(interp.budget)
                    bind_one(interp, scope, run_init_one(scope) if run_init_one is not None else UNDEF)
                    return None

                return run_var_single

            def run_var(scope: Scope):
                steps = interp.steps + 1
                interp.steps = steps
                if steps > interp.budget:
                    raise BudgetExceededError(interp.budget)
                for bind, run_init in binders:
                    value = run_init(scope) if run_init is not None else UNDEF
                    bind(interp, scope, value)
                return None

            return run_var

        if isinstance(stmt, A.Return):
            run_arg = self.compile_expr(stmt.arg) if stmt.arg is not None else None

            def run_return(scope: Scope):
                steps = interp.steps + 1
                interp.steps = steps
                if steps > interp.budget:
                    raise BudgetExceededError(interp.budget)
                return (_RET, run_arg(scope) if run_arg is not None else UNDEF)

            return run_return

        if isinstance(stmt, A.If):
            run_test = self.compile_expr(stmt.test)
            run_cons = self.compile_stmt(stmt.cons)
            run_alt = self.compile_stmt(stmt.alt) if stmt.alt is not None else None

            def run_if(scope: Scope):
                steps = interp.steps + 1
                interp.steps = steps
                if steps > interp.budget:
                    raise BudgetExceededError(interp.budget)
                if to_boolean(run_test(scope)):
                    return run_cons(scope)
                if run_alt is not None:
                    return run_alt(scope)
                return None

            return run_if

        if isinstance(stmt, A.Block):
            run_body = self._compile_body(stmt.body)

            def run_block(scope: Scope):
                return run_body(Scope(parent=scope))

            return run_block

        if isinstance(stmt, A.While):
            run_test = self.compile_expr(stmt.test)
            run_body = self.compile_stmt(stmt.body)

            def run_while(scope: Scope):
                budget = interp.budget
                while True:
                    steps = interp.steps + 1
                    interp.steps = steps
                    if steps > budget:
                        raise BudgetExceededError(budget)
                    if not to_boolean(run_test(scope)):
                        return None
                    signal = run_body(scope)
                    if signal is not None:
                        if signal is BREAK:
                            return None
                        if signal is CONT:
                            continue
                        return signal

            return run_while

        if isinstance(stmt, A.DoWhile):
            run_test = self.compile_expr(stmt.test)
            run_body = self.compile_stmt(stmt.body)

            def run_do_while(scope: Scope):
                while True:
                    interp._tick()
                    signal = run_body(scope)
                    if signal is not None:
                        if signal is BREAK:
                            return None
                        if signal is not CONT:
                            return signal
                    if not to_boolean(run_test(scope)):
                        return None

            return run_do_while

        if isinstance(stmt, A.For):
            run_init = self.compile_stmt(stmt.init) if stmt.init is not None else None
            run_test = self.compile_expr(stmt.test) if stmt.test is not None else None
            run_update = self.compile_expr(stmt.update) if stmt.update is not None else None
            run_body = self.compile_stmt(stmt.body)

            def run_for(scope: Scope):
                loop_scope = Scope(parent=scope)
                if run_init is not None:
                    signal = run_init(loop_scope)
                    if signal is not None:
                        return signal
                budget = interp.budget
                while True:
                    steps = interp.steps + 1
                    interp.steps = steps
                    if steps > budget:
                        raise BudgetExceededError(budget)
                    if run_test is not None and not to_boolean(run_test(loop_scope)):
                        return None
                    signal = run_body(loop_scope)
                    if signal is not None and signal is not CONT:
                        if signal is BREAK:
                            return None
                        return signal
                    if run_update is not None:
                        run_update(loop_scope)

            return run_for

        if isinstance(stmt, A.ForInOf):
            run_iter = self.compile_expr(stmt.iterable)
            bind = self.compile_pattern(stmt.pattern)
            declares = stmt.kind != ""
            run_body = self.compile_stmt(stmt.body)
            of = stmt.of

            def run_for_in_of(scope: Scope):
                iterable = run_iter(scope)
                items = _enumerate_for(iterable, of)
                for item in items:
                    interp._tick()
                    loop_scope = Scope(parent=scope)
                    if declares:
                        bind(interp, loop_scope, item)
                    else:
                        bind(interp, scope, item)
                    signal = run_body(loop_scope)
                    if signal is not None and signal is not CONT:
                        if signal is BREAK:
                            return None
                        return signal
                return None

            return run_for_in_of

        if isinstance(stmt, A.Break):
            def run_break(scope: Scope):
                interp._tick()
                return BREAK

            return run_break

        if isinstance(stmt, A.Continue):
            def run_continue(scope: Scope):
                interp._tick()
                return CONT

            return run_continue

        if isinstance(stmt, A.Throw):
            run_arg = self.compile_expr(stmt.arg)

            def run_throw(scope: Scope):
                interp._tick()
                raise ESThrowSignal(run_arg(scope))

            return run_throw

        if isinstance(stmt, A.Try):
            run_block = self._compile_body(stmt.block.body)
            bind_param = self.compile_pattern(stmt.param) if stmt.param is not None else None
            run_handler = self._compile_body(stmt.handler.body) if stmt.handler is not None else None
            run_finalizer = self._compile_body(stmt.finalizer.body) if stmt.finalizer is not None else None

            def run_try(scope: Scope):
                interp._tick()
                signal: object = None
                try:
                    signal = run_block(Scope(parent=scope))
                except (ESThrowSignal, ESRuntimeError) as exc:
                    if run_handler is None:
                        if run_finalizer is not None:
                            fin = run_finalizer(Scope(parent=scope))
                            if fin is not None:
                                return fin
                        raise
                    catch_scope = Scope(parent=scope)
                    if bind_param is not None:
                        value = exc.value if isinstance(exc, ESThrowSignal) else _error_object(exc)
                        bind_param(interp, catch_scope, value)
                    signal = run_handler(catch_scope)
                if run_finalizer is not None:
                    fin = run_finalizer(Scope(parent=scope))
                    if fin is not None:
                        return fin
                return signal

            return run_try

        if isinstance(stmt, A.Switch):
            run_disc = self.compile_expr(stmt.disc)
            compiled_cases = [
                (self.compile_expr(c.test) if c.test is not None else None, [self.compile_stmt(s) for s in c.body])
                for c in stmt.cases
            ]

            def run_switch(scope: Scope):
                interp._tick()
                disc = run_disc(scope)
                switch_scope = Scope(parent=scope)
                matched = False
                for run_test, body in compiled_cases:
                    if not matched:
                        if run_test is None:
                            continue
                        if strict_equals(disc, run_test(switch_scope)):
                            matched = True
                    if matched:
                        for runner in body:
                            signal = runner(switch_scope)
                            if signal is not None:
                                if signal is BREAK:
                                    return None
                                return signal
                if not matched:
                    default_seen = False
                    for (run_test, body) in compiled_cases:
                        if run_test is None:
                            default_seen = True
                        if default_seen:
                            for runner in body:
                                signal = runner(switch_scope)
                                if signal is not None:
                                    if signal is BREAK:
                                        return None
                                    return signal
                return None

            return run_switch

        if isinstance(stmt, A.Empty):
            return lambda scope: None

        if isinstance(stmt, A.FuncDecl):
            # non-hoisted position (inside if, etc.)
            make_fn = self.compile_func_literal(stmt.func)
            name = stmt.func.name or ""

            def run_func_decl(scope: Scope):
                interp._tick()
                scope.declare(name, make_fn(scope))
                return None

            return run_func_decl

        raise ESSyntaxError(f"unsupported statement {type(stmt).__name__}")

    # ---- compilation: patterns ----

    def compile_pattern(self, pattern: A.Pattern) -> Callable:
        if isinstance(pattern, A.IdentPat):
            name = pattern.name

            def bind_ident(interp: "Interp", scope: Scope, value: object):
                scope.declare(name, value)

            return bind_ident

        if isinstance(pattern, A.ObjectPat):
            entries = []
            for prop in pattern.props:
                sub = self.compile_pattern(prop.target)
                run_default = self.compile_expr(prop.default) if prop.default is not None else None
                entries.append((prop.key, sub, run_default))
            rest_name = pattern.rest.name if pattern.rest is not None else None
            keys = [key for key, _, _ in entries]

            def bind_object(interp: "Interp", scope: Scope, value: object):
                if value is UNDEF or value is None:
                    raise ESRuntimeError("TypeError", "cannot destructure null or undefined")
                for key, sub, run_default in entries:
                    item = interp.get_member(value, key)
                    if item is UNDEF and run_default is not None:
                        item = run_default(scope)
                    sub(interp, scope, item)
                if rest_name is not None:
                    rest_props = {}
                    if isinstance(value, JSObject):
                        rest_props = {k: v for k, v in value.props.items() if k not in keys}
                    scope.declare(rest_name, JSObject(rest_props))

            return bind_object

        if isinstance(pattern, A.ArrayPat):
            element_binders = []
            for element in pattern.elements:
                if element is None:
                    element_binders.append(None)
                else:
                    sub = self.compile_pattern(element.target)
                    run_default = self.compile_expr(element.default) if element.default is not None else None
                    element_binders.append((sub, run_default))
            rest_binder = self.compile_pattern(pattern.rest) if pattern.rest is not None else None

            def bind_array(interp: "Interp", scope: Scope, value: object):
                items = _iterable_to_list(value)
                for idx, binder in enumerate(element_binders):
                    if binder is None:
                        continue
                    sub, run_default = binder
                    item = items[idx] if idx < len(items) else UNDEF
                    if item is UNDEF and run_default is not None:
                        item = run_default(scope)
                    sub(interp, scope, item)
                if rest_binder is not None:
                    rest_binder(interp, scope, JSArray(items[len(element_binders):]))

            return bind_array

        raise ESSyntaxError(f"unsupported pattern {type(pattern).__name__}")

    # ---- compilation: functions ----

    def compile_func_literal(self, func: A.FuncLit) -> Callable[[Scope], JSFunction]:
        all_plain = all(
            isinstance(p.pattern, A.IdentPat) and p.default is None and not p.rest
            for p in func.params
        )
        if all_plain:
            names = [p.pattern.name for p in func.params]  # type: ignore[union-attr]
            n_params = len(names)

            def bind_params(interp: "Interp", scope: Scope, args: list):
                scope_vars = scope.vars
                if len(args) >= n_params:
                    for idx in range(n_params):
                        scope_vars[names[idx]] = args[idx]
                else:
                    for idx, name in enumerate(names):
                        scope_vars[name] = args[idx] if idx < len(args) else UNDEF
        else:
            param_binders = []
            for param in func.params:
                sub = self.compile_pattern(param.pattern)
                run_default = self.compile_expr(param.default) if param.default is not None else None
                param_binders.append((sub, run_default, param.rest))

            def bind_params(interp: "Interp", scope: Scope, args: list):
                for idx, (sub, run_default, rest) in enumerate(param_binders):
                    if rest:
                        sub(interp, scope, JSArray(list(args[idx:])))
                        break
                    value = args[idx] if idx < len(args) else UNDEF
                    if value is UNDEF and run_default is not None:
                        value = run_default(scope)
                    sub(interp, scope, value)

        if func.expr_body is not None:
            run_expr = self.compile_expr(func.expr_body)

            def run_body_expr(scope: Scope):
                return (_RET, run_expr(scope))

            run_body = run_body_expr
        else:
            run_body = self._compile_body(func.body)

        name = func.name
        is_arrow = func.is_arrow
        length = len(func.params)

        def make_function(env: Scope) -> JSFunction:
            fn = JSFunction(name, bind_params, run_body, env, is_arrow, length)
            if name and not is_arrow:
                pass  # named function expressions: name binding in own scope skipped
            return fn

        return make_function

    # ---- compilation: expressions ----

    def compile_expr(self, expr: A.Expr) -> Callable[[Scope], object]:
        interp = self

        if isinstance(expr, A.Num):
            value = expr.value
            return lambda scope: value
        if isinstance(expr, A.Str):
            text = expr.value
            return lambda scope: text
        if isinstance(expr, A.Bool):
            flag = expr.value
            return lambda scope: flag
        if isinstance(expr, A.Null):
            return lambda scope: None
        if isinstance(expr, A.Ident):
            name = expr.name
            if name == "undefined":
                return lambda scope: UNDEF

            def run_ident(scope: Scope):
                return scope.lookup(name)

            return run_ident
        if isinstance(expr, A.This):
            return lambda scope: scope.get_this()

        if isinstance(expr, A.Template):
            quasis = expr.quasis
            runners = [self.compile_expr(e) for e in expr.exprs]

            def run_template(scope: Scope):
                parts = [quasis[0]]
                for idx, run in enumerate(runners):
                    parts.append(to_string(run(scope)))
                    parts.append(quasis[idx + 1])
                text = "".join(parts)
                interp._check_string(len(text))
                return text

            return run_template

        if isinstance(expr, A.ArrayLit):
            element_runners: list = []
            for element in expr.elements:
                if element is None:
                    element_runners.append(None)
                elif isinstance(element, A.Spread):
                    element_runners.append(("spread", self.compile_expr(element.arg)))
                else:
                    element_runners.append(("one", self.compile_expr(element)))

            def run_array(scope: Scope):
                items: list[object] = []
                for entry in element_runners:
                    if entry is None:
                        items.append(UNDEF)
                        continue
                    tag, run = entry
                    if tag == "one":
                        items.append(run(scope))
                    else:
                        items.extend(_iterable_to_list(run(scope)))
                    interp._check_array(len(items))
                return JSArray(items)

            return run_array

        if isinstance(expr, A.ObjectLit):
            prop_runners: list = []
            for prop in expr.props:
                if isinstance(prop, A.Spread):
                    prop_runners.append(("spread", self.compile_expr(prop.arg)))
                elif prop.computed:
                    prop_runners.append(("computed", self.compile_expr(prop.key), self.compile_expr(prop.value)))  # type: ignore[arg-type]
                else:
                    prop_runners.append(("fixed", prop.key, self.compile_expr(prop.value)))

            def run_object(scope: Scope):
                obj = JSObject()
                for entry in prop_runners:
                    if entry[0] == "fixed":
                        obj.props[entry[1]] = entry[2](scope)
                    elif entry[0] == "computed":
                        obj.props[interp.member_key(entry[1](scope))] = entry[2](scope)
                    else:
                        source = entry[1](scope)
                        if isinstance(source, JSObject):
                            obj.props.update(source.props)
                        elif isinstance(source, JSArray):
                            for idx, item in enumerate(source.elements):
                                obj.props[str(idx)] = item
                return obj

            return run_object

        if isinstance(expr, A.FuncLit):
            make_fn = self.compile_func_literal(expr)

            def run_func_lit(scope: Scope):
                return make_fn(scope)

            return run_func_lit

        if isinstance(expr, A.Unary):
            op = expr.op
            if op == "typeof" and isinstance(expr.arg, A.Ident):
                name = expr.arg.name

                def run_typeof_ident(scope: Scope):
                    try:
                        return type_of(scope.lookup(name))
                    except ESRuntimeError:
                        return "undefined"

                return run_typeof_ident
            if op == "delete":
                if isinstance(expr.arg, A.Member):
                    member = expr.arg
                    run_obj = self.compile_expr(member.obj)
                    if member.computed:
                        run_prop = self.compile_expr(member.prop)  # type: ignore[arg-type]

                        def run_delete_computed(scope: Scope):
                            obj = run_obj(scope)
                            key = interp.member_key(run_prop(scope))
                            return _delete_member(obj, key)

                        return run_delete_computed
                    key_name = member.prop  # type: ignore[assignment]

                    def run_delete(scope: Scope):
                        return _delete_member(run_obj(scope), key_name)  # type: ignore[arg-type]

                    return run_delete
                return lambda scope: True
            run_arg = self.compile_expr(expr.arg)
            if op == "!":
                return lambda scope: not to_boolean(run_arg(scope))
            if op == "-":
                return lambda scope: -to_number(run_arg(scope))
            if op == "+":
                return lambda scope: to_number(run_arg(scope))
            if op == "~":
                return lambda scope: float(~to_int32(run_arg(scope)))
            if op == "typeof":
                return lambda scope: type_of(run_arg(scope))
            if op == "void":
                return lambda scope: (run_arg(scope), UNDEF)[1]
            raise ESSyntaxError(f"unsupported unary operator {op!r}")

        if isinstance(expr, A.Update):
            return self._compile_update(expr)

        if isinstance(expr, A.Binary):
            return self._compile_binary(expr)

        if isinstance(expr, A.Logical):
            run_left = self.compile_expr(expr.left)
            run_right = self.compile_expr(expr.right)
            if expr.op == "&&":
                def run_and(scope: Scope):
                    left = run_left(scope)
                    return run_right(scope) if to_boolean(left) else left

                return run_and
            if expr.op == "||":
                def run_or(scope: Scope):
                    left = run_left(scope)
                    return left if to_boolean(left) else run_right(scope)

                return run_or

            def run_nullish(scope: Scope):
                left = run_left(scope)
                return run_right(scope) if left is UNDEF or left is None else left

            return run_nullish

        if isinstance(expr, A.Conditional):
            run_test = self.compile_expr(expr.test)
            run_cons = self.compile_expr(expr.cons)
            run_alt = self.compile_expr(expr.alt)
            return lambda scope: run_cons(scope) if to_boolean(run_test(scope)) else run_alt(scope)

        if isinstance(expr, A.Assign):
            return self._compile_assign(expr)

        if isinstance(expr, A.Call):
            return self._compile_call(expr)

        if isinstance(expr, A.New):
            run_callee = self.compile_expr(expr.callee)
            arg_runners = self._compile_args(expr.args)

            def run_new(scope: Scope):
                fn = run_callee(scope)
                return interp.construct(fn, arg_runners(scope))

            return run_new

        if isinstance(expr, A.Member):
            run_obj = self.compile_expr(expr.obj)
            optional = expr.optional
            if expr.computed:
                run_prop = self.compile_expr(expr.prop)  # type: ignore[arg-type]

                def run_member_computed(scope: Scope):
                    obj = run_obj(scope)
                    if optional and (obj is UNDEF or obj is None):
                        return UNDEF
                    key = run_prop(scope)
                    if isinstance(obj, JSArray) and isinstance(key, float):
                        idx = int(key)
                        if idx == key and 0 <= idx < len(obj.elements):
                            return obj.elements[idx]
                        return UNDEF
                    return interp.get_member(obj, interp.member_key(key))

                return run_member_computed
            name = expr.prop  # type: ignore[assignment]

            def run_member(scope: Scope):
                obj = run_obj(scope)
                if type(obj) is JSObject:
                    props = obj.props
                    if name in props:
                        return props[name]
                if optional and (obj is UNDEF or obj is None):
                    return UNDEF
                return interp.get_member(obj, name)  # type: ignore[arg-type]

            return run_member

        if isinstance(expr, A.Sequence):
            runners = [self.compile_expr(e) for e in expr.exprs]

            def run_sequence(scope: Scope):
                result: object = UNDEF
                for run in runners:
                    result = run(scope)
                return result

            return run_sequence

        if isinstance(expr, A.Spread):
            raise ESSyntaxError("spread not allowed here")

        raise ESSyntaxError(f"unsupported expression {type(expr).__name__}")

    def _compile_args(self, args: tuple) -> Callable[[Scope], list]:
        if not any(isinstance(arg, A.Spread) for arg in args):
            simple = [self.compile_expr(arg) for arg in args]

            def run_args_simple(scope: Scope) -> list:
                return [run(scope) for run in simple]

            return run_args_simple

        runners: list = []
        for arg in args:
            if isinstance(arg, A.Spread):
                runners.append(("spread", self.compile_expr(arg.arg)))
            else:
                runners.append(("one", self.compile_expr(arg)))

        def run_args(scope: Scope) -> list:
            out: list = []
            for tag, run in runners:
                if tag == "one":
                    out.append(run(scope))
                else:
                    out.extend(_iterable_to_list(run(scope)))
            return out

        return run_args

    def _compile_call(self, expr: A.Call) -> Callable[[Scope], object]:
        interp = self
        arg_runners = self._compile_args(expr.args)
        optional = expr.optional
        callee = expr.callee
        if isinstance(callee, A.Member):
            run_obj = self.compile_expr(callee.obj)
            member_optional = callee.optional
            if callee.computed:
                run_prop = self.compile_expr(callee.prop)  # type: ignore[arg-type]

                def run_method_call_computed(scope: Scope):
                    obj = run_obj(scope)
                    if member_optional and (obj is UNDEF or obj is None):
                        return UNDEF
                    fn = interp.get_member(obj, interp.member_key(run_prop(scope)))
                    if optional and (fn is UNDEF or fn is None):
                        return UNDEF
                    return interp.call_value(fn, obj, arg_runners(scope))

                return run_method_call_computed
            name = callee.prop  # type: ignore[assignment]

            def run_method_call(scope: Scope):
                obj = run_obj(scope)
                if member_optional and (obj is UNDEF or obj is None):
                    return UNDEF
                fn = interp.get_member(obj, name)  # type: ignore[arg-type]
                if optional and (fn is UNDEF or fn is None):
                    return UNDEF
                if fn is UNDEF:
                    raise ESRuntimeError("TypeError", f"{to_display(obj)}.{name} is not a function")
                return interp.call_value(fn, obj, arg_runners(scope))

            return run_method_call

        run_callee = self.compile_expr(callee)

        def run_call(scope: Scope):
            fn = run_callee(scope)
            if optional and (fn is UNDEF or fn is None):
                return UNDEF
            return interp.call_value(fn, UNDEF, arg_runners(scope))

        return run_call

    def _compile_update(self, expr: A.Update) -> Callable[[Scope], object]:
        interp = self
        delta = 1.0 if expr.op == "++" else -1.0
        prefix = expr.prefix
        target = expr.arg
        if isinstance(target, A.Ident):
            name = target.name

            def run_update_ident(scope: Scope):
                old = to_number(scope.lookup(name))
                new = old + delta
                scope.assign(name, new)
                return new if prefix else old

            return run_update_ident
        assert isinstance(target, A.Member)
        run_obj = self.compile_expr(target.obj)
        if target.computed:
            run_prop = self.compile_expr(target.prop)  # type: ignore[arg-type]

            def run_update_computed(scope: Scope):
                obj = run_obj(scope)
                key = interp.member_key(run_prop(scope))
                old = to_number(interp.get_member(obj, key))
                new = old + delta
                interp.set_member(obj, key, new)
                return new if prefix else old

            return run_update_computed
        name = target.prop  # type: ignore[assignment]

        def run_update_member(scope: Scope):
            obj = run_obj(scope)
            old = to_number(interp.get_member(obj, name))  # type: ignore[arg-type]
            new = old + delta
            interp.set_member(obj, name, new)  # type: ignore[arg-type]
            return new if prefix else old

        return run_update_member

    def _compile_binary(self, expr: A.Binary) -> Callable[[Scope], object]:
        interp = self
        run_left = self.compile_expr(expr.left)
        run_right = self.compile_expr(expr.right)
        op = expr.op

        if op == "+":
            return lambda scope: interp.js_add(run_left(scope), run_right(scope))
        if op == "-":
            return lambda scope: to_number(run_left(scope)) - to_number(run_right(scope))
        if op == "*":
            return lambda scope: to_number(run_left(scope)) * to_number(run_right(scope))
        if op == "/":
            def run_div(scope: Scope):
                a = to_number(run_left(scope))
                b = to_number(run_right(scope))
                if b == 0.0:
                    if a != a or a == 0.0:
                        return math.nan
                    sign = math.copysign(1.0, a) * math.copysign(1.0, b)
                    return math.inf * sign
                return a / b

            return run_div
        if op == "%":
            def run_mod(scope: Scope):
                a = to_number(run_left(scope))
                b = to_number(run_right(scope))
                if b == 0.0 or a != a or b != b or a in (math.inf, -math.inf):
                    return math.nan
                if b in (math.inf, -math.inf):
                    return a
                return math.fmod(a, b)

            return run_mod
        if op == "**":
            def run_pow(scope: Scope):
                a = to_number(run_left(scope))
                b = to_number(run_right(scope))
                try:
                    result = a ** b
                except (OverflowError, ZeroDivisionError, ValueError):
                    if a == 0.0 and b < 0:
                        return math.inf
                    return math.nan
                if isinstance(result, complex):
                    return math.nan
                return float(result)

            return run_pow
        if op in ("==", "!="):
            negate = op == "!="
            return lambda scope: loose_equals(run_left(scope), run_right(scope)) != negate
        if op in ("===", "!=="):
            negate = op == "!=="
            return lambda scope: strict_equals(run_left(scope), run_right(scope)) != negate
        if op in ("<", ">", "<=", ">="):
            def run_compare(scope: Scope):
                a = run_left(scope)
                b = run_right(scope)
                if isinstance(a, str) and isinstance(b, str):
                    if op == "<":
                        return a < b
                    if op == ">":
                        return a > b
                    if op == "<=":
                        return a <= b
                    return a >= b
                x = to_number(a)
                y = to_number(b)
                if x != x or y != y:
                    return False
                if op == "<":
                    return x < y
                if op == ">":
                    return x > y
                if op == "<=":
                    return x <= y
                return x >= y

            return run_compare
        if op == "&":
            return lambda scope: float(to_int32(run_left(scope)) & to_int32(run_right(scope)))
        if op == "|":
            return lambda scope: float(to_int32(run_left(scope)) | to_int32(run_right(scope)))
        if op == "^":
            return lambda scope: float(to_int32(run_left(scope)) ^ to_int32(run_right(scope)))
        if op == "<<":
            return lambda scope: float(to_int32(to_int32(run_left(scope)) << (to_uint32(run_right(scope)) & 31)))
        if op == ">>":
            return lambda scope: float(to_int32(run_left(scope)) >> (to_uint32(run_right(scope)) & 31))
        if op == ">>>":
            return lambda scope: float(to_uint32(run_left(scope)) >> (to_uint32(run_right(scope)) & 31))
        if op == "in":
            def run_in(scope: Scope):
                key = interp.member_key(run_left(scope))
                obj = run_right(scope)
                if isinstance(obj, JSObject):
                    return key in obj.props
                if isinstance(obj, JSArray):
                    return key.isdigit() and int(key) < len(obj.elements)
                if isinstance(obj, HostObject):
                    return key in obj.keys()
                raise ESRuntimeError("TypeError", "'in' requires an object")

            return run_in
        if op == "instanceof":
            def run_instanceof(scope: Scope):
                run_left(scope)
                run_right(scope)
                return False  # no prototype chain in this dialect

            return run_instanceof
        raise ESSyntaxError(f"unsupported binary operator {op!r}")

    def _compile_assign(self, expr: A.Assign) -> Callable[[Scope], object]:
        interp = self
        op = expr.op
        run_value = self.compile_expr(expr.value)
        target = expr.target

        def apply_op(old: object, new: object) -> object:
            if op == "+=":
                return interp.js_add(old, new)
            if op == "-=":
                return to_number(old) - to_number(new)
            if op == "*=":
                return to_number(old) * to_number(new)
            if op == "/=":
                a, b = to_number(old), to_number(new)
                if b == 0.0:
                    if a != a or a == 0.0:
                        return math.nan
                    return math.inf * math.copysign(1.0, a) * math.copysign(1.0, b)
                return a / b
            if op == "%=":
                a, b = to_number(old), to_number(new)
                return math.nan if b == 0.0 else math.fmod(a, b)
            if op == "**=":
                return float(to_number(old) ** to_number(new))
            if op == "&=":
                return float(to_int32(old) & to_int32(new))
            if op == "|=":
                return float(to_int32(old) | to_int32(new))
            if op == "^=":
                return float(to_int32(old) ^ to_int32(new))
            if op == "<<=":
                return float(to_int32(to_int32(old) << (to_uint32(new) & 31)))
            if op == ">>=":
                return float(to_int32(old) >> (to_uint32(new) & 31))
            if op == ">>>=":
                return float(to_uint32(old) >> (to_uint32(new) & 31))
            raise ESSyntaxError(f"unsupported assignment operator {op!r}")

        if isinstance(target, A.Ident):
            name = target.name
            if op == "=":
                def run_assign_ident(scope: Scope):
                    value = run_value(scope)
                    scope.assign(name, value)
                    return value

                return run_assign_ident
            if op in ("&&=", "||=", "??="):
                def run_logical_assign_ident(scope: Scope):
                    old = scope.lookup(name)
                    if op == "&&=" and not to_boolean(old):
                        return old
                    if op == "||=" and to_boolean(old):
                        return old
                    if op == "??=" and not (old is UNDEF or old is None):
                        return old
                    value = run_value(scope)
                    scope.assign(name, value)
                    return value

                return run_logical_assign_ident

            def run_compound_ident(scope: Scope):
                value = apply_op(scope.lookup(name), run_value(scope))
                scope.assign(name, value)
                return value

            return run_compound_ident

        assert isinstance(target, A.Member)
        run_obj = self.compile_expr(target.obj)
        if target.computed:
            run_prop = self.compile_expr(target.prop)  # type: ignore[arg-type]

            def run_assign_computed(scope: Scope):
                obj = run_obj(scope)
                key_val = run_prop(scope)
                if isinstance(obj, JSArray) and isinstance(key_val, float) and key_val == int(key_val) and key_val >= 0:
                    idx = int(key_val)
                    if op == "=":
                        value = run_value(scope)
                    else:
                        old = obj.elements[idx] if idx < len(obj.elements) else UNDEF
                        if op in ("&&=", "||=", "??="):
                            value = _logical_short(op, old)
                            if value is not _NEEDS_RHS:
                                return value
                            value = run_value(scope)
                        else:
                            value = apply_op(old, run_value(scope))
                    interp._check_array(idx + 1)
                    if idx >= len(obj.elements):
                        obj.elements.extend([UNDEF] * (idx + 1 - len(obj.elements)))
                    obj.elements[idx] = value
                    return value
                key = interp.member_key(key_val)
                if op == "=":
                    value = run_value(scope)
                elif op in ("&&=", "||=", "??="):
                    old = interp.get_member(obj, key)
                    value = _logical_short(op, old)
                    if value is not _NEEDS_RHS:
                        return value
                    value = run_value(scope)
                else:
                    value = apply_op(interp.get_member(obj, key), run_value(scope))
                interp.set_member(obj, key, value)
                return value

            return run_assign_computed

        name = target.prop  # type: ignore[assignment]
        if op == "=":
            def run_assign_member(scope: Scope):
                obj = run_obj(scope)
                value = run_value(scope)
                interp.set_member(obj, name, value)  # type: ignore[arg-type]
                return value

            return run_assign_member

        def run_compound_member(scope: Scope):
            obj = run_obj(scope)
            old = interp.get_member(obj, name)  # type: ignore[arg-type]
            if op in ("&&=", "||=", "??="):
                value = _logical_short(op, old)
                if value is not _NEEDS_RHS:
                    return value
                value = run_value(scope)
            else:
                value = apply_op(old, run_value(scope))
            interp.set_member(obj, name, value)  # type: ignore[arg-type]
            return value

        return run_compound_member

    # ---- builtins ----

    def _install_builtins(self) -> None:
        g = self.global_scope
        g.declare("undefined", UNDEF)
        g.declare("NaN", math.nan)
        g.declare("Infinity", math.inf)
        g.declare("Math", _make_math(self))
        g.declare("JSON", _make_json())
        g.declare("console", _make_console(self))
        g.declare("Number", _make_number_ctor())
        g.declare("String", _make_string_ctor())
        g.declare("Boolean", HostFunction("Boolean", lambda i, t, a: to_boolean(a[0]) if a else False))
        g.declare("Array", _make_array_ctor())
        g.declare("Object", _make_object_ctor())
        g.declare("Error", _make_error_ctor("Error"))
        g.declare("TypeError", _make_error_ctor("TypeError"))
        g.declare("RangeError", _make_error_ctor("RangeError"))
        g.declare("parseInt", HostFunction("parseInt", _parse_int))
        g.declare("parseFloat", HostFunction("parseFloat", _parse_float))
        g.declare("isNaN", HostFunction("isNaN", lambda i, t, a: to_number(a[0] if a else UNDEF) != to_number(a[0] if a else UNDEF)))
        g.declare("isFinite", HostFunction("isFinite", lambda i, t, a: math.isfinite(to_number(a[0] if a else UNDEF))))


# ---- helpers shared by builtins ----

_NEEDS_RHS = object()


def _logical_short(op: str, old: object):
    if op == "&&=" and not to_boolean(old):
        return old
    if op == "||=" and to_boolean(old):
        return old
    if op == "??=" and not (old is UNDEF or old is None):
        return old
    return _NEEDS_RHS


def _error_object(exc: ESRuntimeError) -> JSObject:
    return JSObject({"name": exc.kind, "message": exc.js_message})


def _delete_member(obj: object, key: str) -> bool:
    if isinstance(obj, JSObject):
        obj.props.pop(key, None)
        return True
    if isinstance(obj, JSArray) and key.isdigit():
        idx = int(key)
        if 0 <= idx < len(obj.elements):
            obj.elements[idx] = UNDEF
        return True
    return True


def _iterable_to_list(value: object) -> list:
    if isinstance(value, JSArray):
        return list(value.elements)
    if isinstance(value, str):
        return list(value)
    if value is UNDEF or value is None:
        raise ESRuntimeError("TypeError", f"{to_string(value)} is not iterable")
    if isinstance(value, HostObject):
        length = value.get_prop("length")
        if isinstance(length, float):
            return [value.get_prop(str(i)) for i in range(int(length))]
    raise ESRuntimeError("TypeError", f"{type_of(value)} is not iterable")


def _enumerate_for(value: object, of: bool) -> list:
    if of:
        return _iterable_to_list(value)
    # for-in: property keys
    if isinstance(value, JSObject):
        return list(value.props.keys())
    if isinstance(value, JSArray):
        return [str(i) for i in range(len(value.elements))]
    if isinstance(value, str):
        return [str(i) for i in range(len(value))]
    if isinstance(value, HostObject):
        return value.keys()
    return []


def _arg(args: list, idx: int) -> object:
    return args[idx] if idx < len(args) else UNDEF


def _pattern_names(pattern: A.Pattern) -> list[str]:
    if isinstance(pattern, A.IdentPat):
        return [pattern.name]
    if isinstance(pattern, A.ObjectPat):
        names: list[str] = []
        for prop in pattern.props:
            names.extend(_pattern_names(prop.target))
        if pattern.rest is not None:
            names.append(pattern.rest.name)
        return names
    if isinstance(pattern, A.ArrayPat):
        names = []
        for element in pattern.elements:
            if element is not None:
                names.extend(_pattern_names(element.target))
        if pattern.rest is not None:
            names.extend(_pattern_names(pattern.rest))
        return names
    return []


# ---- Math ----


def _make_math(interp: Interp) -> JSObject:
    def unary(name: str, fn: Callable[[float], float]) -> HostFunction:
        def impl(i: Interp, this, args):
            try:
                return float(fn(to_number(args[0] if args else UNDEF)))
            except (ValueError, OverflowError):
                return math.nan

        return HostFunction(name, impl)

    def js_round(x: float) -> float:
        if x != x or x in (math.inf, -math.inf):
            return x
        return float(math.floor(x + 0.5))

    def js_sign(x: float) -> float:
        if x != x:
            return x
        if x > 0:
            return 1.0
        if x < 0:
            return -1.0
        return x  # preserves signed zero

    props: dict[str, object] = {
        "PI": math.pi,
        "E": math.e,
        "LN2": math.log(2),
        "LN10": math.log(10),
        "SQRT2": math.sqrt(2),
        "abs": unary("abs", abs),
        "floor": unary("floor", lambda x: float(math.floor(x)) if math.isfinite(x) else x),
        "ceil": unary("ceil", lambda x: float(math.ceil(x)) if math.isfinite(x) else x),
        "round": unary("round", js_round),
        "trunc": unary("trunc", lambda x: float(math.trunc(x)) if math.isfinite(x) else x),
        "sign": unary("sign", js_sign),
        "sqrt": unary("sqrt", lambda x: math.sqrt(x) if x >= 0 else math.nan),
        "cbrt": unary("cbrt", lambda x: math.copysign(abs(x) ** (1 / 3), x)),
        "sin": unary("sin", math.sin),
        "cos": unary("cos", math.cos),
        "tan": unary("tan", math.tan),
        "asin": unary("asin", math.asin),
        "acos": unary("acos", math.acos),
        "atan": unary("atan", math.atan),
        "exp": unary("exp", math.exp),
        "log": unary("log", lambda x: math.log(x) if x > 0 else (-math.inf if x == 0 else math.nan)),
        "log2": unary("log2", lambda x: math.log2(x) if x > 0 else (-math.inf if x == 0 else math.nan)),
        "log10": unary("log10", lambda x: math.log10(x) if x > 0 else (-math.inf if x == 0 else math.nan)),
    }

    def impl_atan2(i: Interp, this, args):
        return math.atan2(to_number(_arg(args, 0)), to_number(_arg(args, 1)))

    def impl_pow(i: Interp, this, args):
        a, b = to_number(_arg(args, 0)), to_number(_arg(args, 1))
        try:
            result = a ** b
        except (OverflowError, ZeroDivisionError, ValueError):
            return math.inf if (a == 0.0 and b < 0) else math.nan
        return math.nan if isinstance(result, complex) else float(result)

    def impl_min(i: Interp, this, args):
        if not args:
            return math.inf
        values = [to_number(a) for a in args]
        if any(v != v for v in values):
            return math.nan
        return min(values)

    def impl_max(i: Interp, this, args):
        if not args:
            return -math.inf
        values = [to_number(a) for a in args]
        if any(v != v for v in values):
            return math.nan
        return max(values)

    def impl_hypot(i: Interp, this, args):
        return math.hypot(*[to_number(a) for a in args])

    def impl_random(i: Interp, this, args):
        return i.rng.random()

    props["atan2"] = HostFunction("atan2", impl_atan2)
    props["pow"] = HostFunction("pow", impl_pow)
    props["min"] = HostFunction("min", impl_min)
    props["max"] = HostFunction("max", impl_max)
    props["hypot"] = HostFunction("hypot", impl_hypot)
    props["random"] = HostFunction("random", impl_random)
    return JSObject(props)


# ---- JSON ----


def _json_stringify(interp: Interp, value: object, depth: int = 0) -> str | None:
    if depth > 32:
        raise ESRuntimeError("TypeError", "JSON.stringify nesting too deep")
    if value is None:
        return "null"
    if value is UNDEF or is_callable(value):
        return None
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return number_to_string(value) if math.isfinite(value) else "null"
    if isinstance(value, str):
        import json as _json

        return _json.dumps(value)
    if isinstance(value, JSArray):
        parts = []
        for item in value.elements:
            text = _json_stringify(interp, item, depth + 1)
            parts.append(text if text is not None else "null")
        out = "[" + ",".join(parts) + "]"
        interp._check_string(len(out))
        return out
    if isinstance(value, JSObject):
        parts = []
        import json as _json

        for key, item in value.props.items():
            text = _json_stringify(interp, item, depth + 1)
            if text is not None:
                parts.append(f"{_json.dumps(key)}:{text}")
        out = "{" + ",".join(parts) + "}"
        interp._check_string(len(out))
        return out
    return None


def _json_to_js(value: object) -> object:
    if isinstance(value, dict):
        return JSObject({k: _json_to_js(v) for k, v in value.items()})
    if isinstance(value, list):
        return JSArray([_json_to_js(v) for v in value])
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return float(value)
    return value


def _make_json() -> JSObject:
    def impl_stringify(i: Interp, this, args):
        text = _json_stringify(i, _arg(args, 0))
        return text if text is not None else UNDEF

    def impl_parse(i: Interp, this, args):
        import json as _json

        raw = to_string(_arg(args, 0))
        try:
            return _json_to_js(_json.loads(raw))
        except ValueError as exc:
            raise ESThrowSignal(JSObject({"name": "SyntaxError", "message": str(exc)})) from None

    return JSObject({
        "stringify": HostFunction("stringify", impl_stringify),
        "parse": HostFunction("parse", impl_parse),
    })


def _make_console(interp: Interp) -> JSObject:
    def impl_log(i: Interp, this, args):
        line = " ".join(to_display(a) for a in args)
        if len(i.console_log) < 1000:
            i.console_log.append(line)
        return UNDEF

    log = HostFunction("log", impl_log)
    return JSObject({"log": log, "warn": log, "error": log, "info": log})


def _make_number_ctor() -> HostFunction:
    def impl(i: Interp, this, args):
        return to_number(_arg(args, 0)) if args else 0.0

    ctor = HostFunction("Number", impl)
    return _with_statics(ctor, {
        "isFinite": HostFunction("isFinite", lambda i, t, a: isinstance(_arg(a, 0), float) and math.isfinite(_arg(a, 0))),  # type: ignore[arg-type]
        "isNaN": HostFunction("isNaN", lambda i, t, a: isinstance(_arg(a, 0), float) and _arg(a, 0) != _arg(a, 0)),
        "isInteger": HostFunction("isInteger", lambda i, t, a: isinstance(_arg(a, 0), float) and math.isfinite(_arg(a, 0)) and _arg(a, 0) == int(_arg(a, 0))),  # type: ignore[arg-type]
        "parseFloat": HostFunction("parseFloat", _parse_float),
        "parseInt": HostFunction("parseInt", _parse_int),
        "MAX_SAFE_INTEGER": float(2**53 - 1),
        "MIN_SAFE_INTEGER": float(-(2**53 - 1)),
        "EPSILON": 2.220446049250313e-16,
        "POSITIVE_INFINITY": math.inf,
        "NEGATIVE_INFINITY": -math.inf,
        "NaN": math.nan,
    })


def _make_string_ctor() -> HostFunction:
    def impl(i: Interp, this, args):
        return to_string(_arg(args, 0)) if args else ""

    ctor = HostFunction("String", impl)
    return _with_statics(ctor, {
        "fromCharCode": HostFunction(
            "fromCharCode", lambda i, t, a: "".join(chr(int(to_number(x)) & 0xFFFF) for x in a)
        ),
    })


class _StaticsHostFunction(HostFunction):
    """Host function that also carries static properties (Array.isArray...)."""

    __slots__ = ("statics",)

    def __init__(self, name: str, fn: Callable, statics: dict[str, object]):
        super().__init__(name, fn)
        self.statics = statics


def _with_statics(fn: HostFunction, statics: dict[str, object]) -> HostFunction:
    return _StaticsHostFunction(fn.name, fn.fn, statics)


def _make_array_ctor() -> HostFunction:
    def impl(i: Interp, this, args):
        if len(args) == 1 and isinstance(args[0], float):
            n = args[0]
            if n != int(n) or n < 0:
                raise ESRuntimeError("RangeError", "invalid array length")
            i._check_array(int(n))
            return JSArray([UNDEF] * int(n))
        return JSArray(list(args))

    def impl_is_array(i: Interp, this, args):
        return isinstance(_arg(args, 0), JSArray)

    def impl_from(i: Interp, this, args):
        items = _iterable_to_list(_arg(args, 0))
        i._check_array(len(items))
        mapper = _arg(args, 1)
        if is_callable(mapper):
            items = [i.call_value(mapper, UNDEF, [item, float(idx)]) for idx, item in enumerate(items)]
        return JSArray(items)

    def impl_of(i: Interp, this, args):
        return JSArray(list(args))

    ctor = HostFunction("Array", impl)
    return _with_statics(ctor, {
        "isArray": HostFunction("isArray", impl_is_array),
        "from": HostFunction("from", impl_from),
        "of": HostFunction("of", impl_of),
    })


def _make_object_ctor() -> HostFunction:
    def impl(i: Interp, this, args):
        first = _arg(args, 0)
        return first if isinstance(first, (JSObject, JSArray)) else JSObject()

    def impl_keys(i: Interp, this, args):
        obj = _arg(args, 0)
        if isinstance(obj, JSObject):
            return JSArray(list(obj.props.keys()))
        if isinstance(obj, JSArray):
            return JSArray([str(n) for n in range(len(obj.elements))])
        if isinstance(obj, HostObject):
            return JSArray(obj.keys())
        return JSArray([])

    def impl_values(i: Interp, this, args):
        obj = _arg(args, 0)
        if isinstance(obj, JSObject):
            return JSArray(list(obj.props.values()))
        if isinstance(obj, JSArray):
            return JSArray(list(obj.elements))
        return JSArray([])

    def impl_entries(i: Interp, this, args):
        obj = _arg(args, 0)
        if isinstance(obj, JSObject):
            return JSArray([JSArray([k, v]) for k, v in obj.props.items()])
        if isinstance(obj, JSArray):
            return JSArray([JSArray([str(n), v]) for n, v in enumerate(obj.elements)])
        return JSArray([])

    def impl_assign(i: Interp, this, args):
        target = _arg(args, 0)
        if not isinstance(target, JSObject):
            raise ESRuntimeError("TypeError", "Object.assign target must be an object")
        for source in args[1:]:
            if isinstance(source, JSObject):
                target.props.update(source.props)
        return target

    def impl_freeze(i: Interp, this, args):
        return _arg(args, 0)  # no-op: mutability caps are enforced elsewhere

    ctor = HostFunction("Object", impl)
    return _with_statics(ctor, {
        "keys": HostFunction("keys", impl_keys),
        "values": HostFunction("values", impl_values),
        "entries": HostFunction("entries", impl_entries),
        "assign": HostFunction("assign", impl_assign),
        "freeze": HostFunction("freeze", impl_freeze),
    })


def _make_error_ctor(kind: str) -> HostFunction:
    def impl(i: Interp, this, args):
        message = to_string(_arg(args, 0)) if args and _arg(args, 0) is not UNDEF else ""
        return JSObject({"name": kind, "message": message})

    return HostFunction(kind, impl)


def _parse_int(i: Interp, this, args):
    text = to_string(_arg(args, 0)).strip()
    radix = int(to_number(_arg(args, 1))) if len(args) > 1 and _arg(args, 1) is not UNDEF else 10
    if radix == 0:
        radix = 10
    sign = 1
    if text.startswith(("-", "+")):
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    if radix == 16 and text.lower().startswith("0x"):
        text = text[2:]
    elif radix == 10 and text.lower().startswith("0x"):
        radix = 16
        text = text[2:]
    digits = "0123456789abcdefghijklmnopqrstuvwxyz"[:radix]
    end = 0
    for ch in text:
        if ch.lower() not in digits:
            break
        end += 1
    if end == 0:
        return math.nan
    return float(sign * int(text[:end], radix))


def _parse_float(i: Interp, this, args):
    text = to_string(_arg(args, 0)).strip()
    import re

    match = re.match(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?|^[+-]?Infinity", text)
    if not match:
        return math.nan
    token = match.group(0)
    if token.endswith("Infinity"):
        return -math.inf if token.startswith("-") else math.inf
    return float(token)


# ---- prototype method tables (this-bound host functions) ----


def _method(fn: Callable) -> HostFunction:
    return HostFunction(fn.__name__, fn)


def _array_push(i: Interp, this: JSArray, args):
    i._check_array(len(this.elements) + len(args))
    this.elements.extend(args)
    return float(len(this.elements))


def _array_pop(i: Interp, this: JSArray, args):
    return this.elements.pop() if this.elements else UNDEF


def _array_shift(i: Interp, this: JSArray, args):
    return this.elements.pop(0) if this.elements else UNDEF


def _array_unshift(i: Interp, this: JSArray, args):
    i._check_array(len(this.elements) + len(args))
    this.elements[0:0] = args
    return float(len(this.elements))


def _array_index_of(i: Interp, this: JSArray, args):
    needle = _arg(args, 0)
    for idx, item in enumerate(this.elements):
        if strict_equals(item, needle):
            return float(idx)
    return -1.0


def _array_includes(i: Interp, this: JSArray, args):
    needle = _arg(args, 0)
    for item in this.elements:
        if strict_equals(item, needle) or (isinstance(item, float) and isinstance(needle, float) and item != item and needle != needle):
            return True
    return False


def _array_slice(i: Interp, this: JSArray, args):
    start, end = _slice_bounds(len(this.elements), args)
    return JSArray(this.elements[start:end])


def _array_splice(i: Interp, this: JSArray, args):
    length = len(this.elements)
    start = _clamp_index(to_number(_arg(args, 0)) if args else 0.0, length)
    delete_count = length - start if len(args) < 2 else max(0, int(to_number(_arg(args, 1))))
    removed = this.elements[start : start + delete_count]
    insert = list(args[2:])
    i._check_array(length - len(removed) + len(insert))
    this.elements[start : start + delete_count] = insert
    return JSArray(removed)


def _array_concat(i: Interp, this: JSArray, args):
    out = list(this.elements)
    for a in args:
        if isinstance(a, JSArray):
            out.extend(a.elements)
        else:
            out.append(a)
        i._check_array(len(out))
    return JSArray(out)


def _array_join(i: Interp, this: JSArray, args):
    sep = to_string(_arg(args, 0)) if args and _arg(args, 0) is not UNDEF else ","
    parts = ["" if e is UNDEF or e is None else to_string(e) for e in this.elements]
    out = sep.join(parts)
    i._check_string(len(out))
    return out


def _array_for_each(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    for idx, item in enumerate(list(this.elements)):
        i.call_value(fn, UNDEF, [item, float(idx), this])
    return UNDEF


def _array_map(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    return JSArray([i.call_value(fn, UNDEF, [item, float(idx), this]) for idx, item in enumerate(list(this.elements))])


def _array_filter(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    return JSArray([item for idx, item in enumerate(list(this.elements)) if to_boolean(i.call_value(fn, UNDEF, [item, float(idx), this]))])


def _array_reduce(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    items = list(this.elements)
    if len(args) > 1:
        acc = args[1]
        start = 0
    else:
        if not items:
            raise ESRuntimeError("TypeError", "reduce of empty array with no initial value")
        acc = items[0]
        start = 1
    for idx in range(start, len(items)):
        acc = i.call_value(fn, UNDEF, [acc, items[idx], float(idx), this])
    return acc


def _array_some(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    return any(to_boolean(i.call_value(fn, UNDEF, [item, float(idx), this])) for idx, item in enumerate(list(this.elements)))


def _array_every(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    return all(to_boolean(i.call_value(fn, UNDEF, [item, float(idx), this])) for idx, item in enumerate(list(this.elements)))


def _array_find(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    for idx, item in enumerate(list(this.elements)):
        if to_boolean(i.call_value(fn, UNDEF, [item, float(idx), this])):
            return item
    return UNDEF


def _array_find_index(i: Interp, this: JSArray, args):
    fn = _arg(args, 0)
    for idx, item in enumerate(list(this.elements)):
        if to_boolean(i.call_value(fn, UNDEF, [item, float(idx), this])):
            return float(idx)
    return -1.0


def _array_fill(i: Interp, this: JSArray, args):
    value = _arg(args, 0)
    start, end = _slice_bounds(len(this.elements), args[1:])
    for idx in range(start, end):
        this.elements[idx] = value
    return this


def _array_reverse(i: Interp, this: JSArray, args):
    this.elements.reverse()
    return this


def _array_sort(i: Interp, this: JSArray, args):
    comparator = _arg(args, 0)
    if is_callable(comparator):
        import functools

        def cmp(a, b):
            r = to_number(i.call_value(comparator, UNDEF, [a, b]))
            if r != r:
                return 0
            return -1 if r < 0 else (1 if r > 0 else 0)

        this.elements.sort(key=functools.cmp_to_key(cmp))
    else:
        this.elements.sort(key=lambda v: to_string(v))
    return this


def _array_flat(i: Interp, this: JSArray, args):
    depth = int(to_number(_arg(args, 0))) if args and _arg(args, 0) is not UNDEF else 1

    def flatten(items: list, d: int) -> list:
        out: list = []
        for item in items:
            if isinstance(item, JSArray) and d > 0:
                out.extend(flatten(item.elements, d - 1))
            else:
                out.append(item)
            i._check_array(len(out))
        return out

    return JSArray(flatten(this.elements, depth))


_ARRAY_PROTO: dict[str, HostFunction] = {
    "push": _method(_array_push),
    "pop": _method(_array_pop),
    "shift": _method(_array_shift),
    "unshift": _method(_array_unshift),
    "indexOf": _method(_array_index_of),
    "includes": _method(_array_includes),
    "slice": _method(_array_slice),
    "splice": _method(_array_splice),
    "concat": _method(_array_concat),
    "join": _method(_array_join),
    "forEach": _method(_array_for_each),
    "map": _method(_array_map),
    "filter": _method(_array_filter),
    "reduce": _method(_array_reduce),
    "some": _method(_array_some),
    "every": _method(_array_every),
    "find": _method(_array_find),
    "findIndex": _method(_array_find_index),
    "fill": _method(_array_fill),
    "reverse": _method(_array_reverse),
    "sort": _method(_array_sort),
    "flat": _method(_array_flat),
}


def _slice_bounds(length: int, args: list) -> tuple[int, int]:
    start = _clamp_index(to_number(_arg(args, 0)) if args and _arg(args, 0) is not UNDEF else 0.0, length)
    if len(args) > 1 and _arg(args, 1) is not UNDEF:
        end = _clamp_index(to_number(_arg(args, 1)), length)
    else:
        end = length
    return start, max(start, end)


def _clamp_index(n: float, length: int) -> int:
    if n != n:
        return 0
    idx = int(n)
    if idx < 0:
        idx += length
    return max(0, min(length, idx))


def _string_char_at(i: Interp, this: str, args):
    idx = int(to_number(_arg(args, 0))) if args else 0
    return this[idx] if 0 <= idx < len(this) else ""


def _string_char_code_at(i: Interp, this: str, args):
    idx = int(to_number(_arg(args, 0))) if args else 0
    return float(ord(this[idx])) if 0 <= idx < len(this) else math.nan


def _string_index_of(i: Interp, this: str, args):
    return float(this.find(to_string(_arg(args, 0))))


def _string_includes(i: Interp, this: str, args):
    return to_string(_arg(args, 0)) in this


def _string_slice(i: Interp, this: str, args):
    start, end = _slice_bounds(len(this), args)
    return this[start:end]


def _string_substring(i: Interp, this: str, args):
    a = _clamp_index(to_number(_arg(args, 0)) if args else 0.0, len(this))
    b = _clamp_index(to_number(_arg(args, 1)), len(this)) if len(args) > 1 and _arg(args, 1) is not UNDEF else len(this)
    if a > b:
        a, b = b, a
    return this[a:b]


def _string_repeat(i: Interp, this: str, args):
    n = int(to_number(_arg(args, 0)))
    if n < 0:
        raise ESRuntimeError("RangeError", "invalid repeat count")
    i._check_string(len(this) * n)
    return this * n


def _string_split(i: Interp, this: str, args):
    sep = _arg(args, 0)
    if sep is UNDEF:
        return JSArray([this])
    sep_text = to_string(sep)
    parts = list(this) if sep_text == "" else this.split(sep_text)
    i._check_array(len(parts))
    return JSArray(list(parts))


def _string_replace(i: Interp, this: str, args):
    pattern = to_string(_arg(args, 0))
    replacement = to_string(_arg(args, 1))
    return this.replace(pattern, replacement, 1)


def _string_replace_all(i: Interp, this: str, args):
    pattern = to_string(_arg(args, 0))
    replacement = to_string(_arg(args, 1))
    out = this.replace(pattern, replacement)
    i._check_string(len(out))
    return out


def _string_pad(start: bool):
    def impl(i: Interp, this: str, args):
        target = int(to_number(_arg(args, 0)))
        filler = to_string(_arg(args, 1)) if len(args) > 1 and _arg(args, 1) is not UNDEF else " "
        i._check_string(max(target, len(this)))
        if not filler or target <= len(this):
            return this
        pad_len = target - len(this)
        pad = (filler * (pad_len // len(filler) + 1))[:pad_len]
        return pad + this if start else this + pad

    return impl


_STRING_PROTO: dict[str, HostFunction] = {
    "charAt": _method(_string_char_at),
    "charCodeAt": _method(_string_char_code_at),
    "indexOf": _method(_string_index_of),
    "includes": _method(_string_includes),
    "slice": _method(_string_slice),
    "substring": _method(_string_substring),
    "repeat": _method(_string_repeat),
    "split": _method(_string_split),
    "replace": _method(_string_replace),
    "replaceAll": _method(_string_replace_all),
    "toUpperCase": HostFunction("toUpperCase", lambda i, t, a: t.upper()),
    "toLowerCase": HostFunction("toLowerCase", lambda i, t, a: t.lower()),
    "trim": HostFunction("trim", lambda i, t, a: t.strip()),
    "startsWith": HostFunction("startsWith", lambda i, t, a: t.startswith(to_string(_arg(a, 0)))),
    "endsWith": HostFunction("endsWith", lambda i, t, a: t.endswith(to_string(_arg(a, 0)))),
    "padStart": HostFunction("padStart", _string_pad(True)),
    "padEnd": HostFunction("padEnd", _string_pad(False)),
    "concat": HostFunction("concat", lambda i, t, a: i.js_add(t, "".join(to_string(x) for x in a))),
    "toString": HostFunction("toString", lambda i, t, a: t),
}


def _number_to_fixed(i: Interp, this: float, args):
    digits = int(to_number(_arg(args, 0))) if args and _arg(args, 0) is not UNDEF else 0
    if not (0 <= digits <= 100):
        raise ESRuntimeError("RangeError", "toFixed() digits out of range")
    if this != this:
        return "NaN"
    if not math.isfinite(this):
        return number_to_string(this)
    return f"{this:.{digits}f}"


_NUMBER_PROTO: dict[str, HostFunction] = {
    "toFixed": _method(_number_to_fixed),
    "toString": HostFunction("toString", lambda i, t, a: number_to_string(t)),
    "valueOf": HostFunction("valueOf", lambda i, t, a: t),
}

_OBJECT_PROTO: dict[str, HostFunction] = {
    "hasOwnProperty": HostFunction(
        "hasOwnProperty",
        lambda i, t, a: isinstance(t, JSObject) and to_string(_arg(a, 0)) in t.props,
    ),
    "toString": HostFunction("toString", lambda i, t, a: to_string(t)),
}


def _fn_call(i: Interp, this, args):
    new_this = _arg(args, 0)
    return i.call_value(this, new_this, list(args[1:]))


def _fn_apply(i: Interp, this, args):
    new_this = _arg(args, 0)
    arg_list = _arg(args, 1)
    call_args = list(arg_list.elements) if isinstance(arg_list, JSArray) else []
    return i.call_value(this, new_this, call_args)


def _fn_bind(i: Interp, this, args):
    bound_this = _arg(args, 0)
    bound_args = list(args[1:])
    target = this

    def impl(i2: Interp, _this, call_args):
        return i2.call_value(target, bound_this, bound_args + list(call_args))

    return HostFunction("bound", impl)


_FN_CALL = HostFunction("call", _fn_call)
_FN_APPLY = HostFunction("apply", _fn_apply)
_FN_BIND = HostFunction("bind", _fn_bind)
