"""
检查器程序与对角程序

[职责]
- checker_program(): 输入 (k, a)，接受当且仅当 check_code(k, a)
    Task 1: a 是非空序列，每行 = pair(公式码, 依据码)，公式码属于 FC，依据标签 < 3
    Task 2: 逐行核对依据（公理模式匹配 / MP / GEN）
    Task 3: 最后一行的公式码等于 k
  Task 1、Task 2 不读 k。
- diag_program(): 输入 (n, m)，接受当且仅当 n 编码恰有一个自由变量 x 的公式 ψ，
  且 m = #ψ[x := numeral(n)]

[约定]
编码是规范的，公式相等即编码相等；树遍历时当前节点放在变量里，
待处理的子节点压入配对栈，栈项为 pair(pair(p, q), 附加信息)。匹配失败一律 reject。
"""

import logging
from contextlib import contextmanager
from functools import lru_cache
from typing import Callable, Dict, Iterator

from proof_forge.core.checker.schemas import AXIOM_TABLE
from proof_forge.core.codec.godel import Tag, encode_term
from proof_forge.core.machine.builder import MiniBuilder
from proof_forge.core.machine.compiler import compile_minilang
from proof_forge.core.machine.ir import CounterMachine
from proof_forge.core.machine.minilang import MiniProgram
from proof_forge.core.pa.syntax import Numeral

logger = logging.getLogger(__name__)

TERM = 0
FORMULA = 1
NUMERAL_ZERO_CODE = encode_term(Numeral(0))


def _nothing() -> None:
    return None


# ------------------------------------------------------------ pieces

def _push_entry(b: MiniBuilder, stack: str, first: str, second: str, kind: int,
                extra: str = "") -> None:
    """栈项 pair(pair(first, second), kind)，给出 extra 时第二分量为 pair(kind, extra)"""
    with b.scratch(2) as (entry, label):
        b.pair(entry, first, second)
        b.set(label, kind)
        if extra:
            b.pair(label, label, extra)
        b.pair(entry, entry, label)
        b.push(stack, entry)


def _tag_is(b: MiniBuilder, flag: str, code: str, tag: int) -> None:
    with b.scratch(3) as (label, rest, const):
        b.unpair(label, rest, code)
        b.set(const, tag)
        b.eq_flag(flag, label, const)


def _numeral_code(b: MiniBuilder, dst: str, value: str) -> None:
    """dst := #numeral(value)（0 为 Zero）"""
    with b.if_zero(value) as branch:
        b.clear(dst)
        with branch.otherwise():
            b.node(dst, Tag.NUMERAL, [value])


def _var_code(b: MiniBuilder, dst: str, index: str) -> None:
    b.node(dst, Tag.VAR, [index])


def _line_formula(b: MiniBuilder, dst: str, proof: str, index: str) -> None:
    """dst := 第 index 行（1-based，须存在）的公式码"""
    with b.scratch(4) as (rest, countdown, line, warrant):
        b.copy(rest, proof)
        b.copy(countdown, index)
        with b.while_(countdown):
            b.dec(countdown)
            b.pop(line, rest)
        b.unpair(dst, warrant, line)


def _strip_forall(b: MiniBuilder, dst: str, code: str) -> None:
    with b.scratch(3) as (flag, label, var):
        b.copy(dst, code)
        _tag_is(b, flag, dst, Tag.FORALL)
        with b.while_(flag):
            b.open_node(dst, label, [var, dst])
            _tag_is(b, flag, dst, Tag.FORALL)


def _succ_view(b: MiniBuilder, dst: str, term: str) -> None:
    """S(t) -> t，Numeral(k+1) -> #numeral(k)；其余 reject"""
    with b.scratch(3) as (label, rest, value):
        b.unpair(label, rest, term)

        def succ() -> None:
            b.dec(rest)
            b.unpair(dst, rest, rest)

        def numeral() -> None:
            b.dec(rest)
            b.unpair(value, rest, rest)
            b.require_positive(value)
            b.dec(value)
            _numeral_code(b, dst, value)

        b.switch(label, {Tag.SUCC: succ, Tag.NUMERAL: numeral})


def _require_zero_term(b: MiniBuilder, code: str) -> None:
    """code 是 Zero 或 Numeral(0)"""
    with b.when_positive(code):
        b.require_const(code, NUMERAL_ZERO_CODE)


def validate_formula_code(b: MiniBuilder, code: str) -> None:
    """code 不属于 FC 时 reject；根节点不入栈"""
    with b.scratch(9) as (stack, entry, node, kind, label, rest, first, second, more):
        b.clear(stack)
        b.copy(node, code)
        b.set(kind, FORMULA)

        def push(child: str, child_kind: int) -> None:
            with b.scratch(2) as (item, marker):
                b.set(marker, child_kind)
                b.pair(item, child, marker)
                b.push(stack, item)

        def children(*kinds: int) -> Callable[[], None]:
            def body() -> None:
                names = [first, second][:len(kinds)]
                b.open_exact(rest, names)
                for name, child_kind in reversed(list(zip(names, kinds))):
                    if child_kind >= 0:
                        push(name, child_kind)
            return body

        b.set(more, 1)
        with b.while_(more):
            b.dec(more)
            b.unpair(label, rest, node)
            with b.if_zero(kind) as branch:
                b.switch(label, {
                    Tag.ZERO: lambda: b.require_zero(rest),
                    Tag.SUCC: children(TERM),
                    Tag.ADD: children(TERM, TERM),
                    Tag.MUL: children(TERM, TERM),
                    Tag.NUMERAL: children(-1),
                    Tag.VAR: children(-1),
                })
                with branch.otherwise():
                    b.switch(label, {
                        Tag.EQ: children(TERM, TERM),
                        Tag.NOT: children(FORMULA),
                        Tag.IMPLIES: children(FORMULA, FORMULA),
                        Tag.FORALL: children(-1, FORMULA),
                    })
            with b.when_positive(stack):
                b.pop(entry, stack)
                b.unpair(node, kind, entry)
                b.inc(more)


def _occurs(b: MiniBuilder, count: str, var: str, term: str) -> None:
    """count := 变量 var 在项 term 中的出现次数"""
    with b.scratch(6) as (stack, node, label, first, second, hit):
        b.clear(count)
        b.clear(stack)
        b.push(stack, term)

        def both() -> None:
            b.push(stack, second)
            b.push(stack, first)

        def variable() -> None:
            b.eq_flag(hit, first, var)
            b.add(count, count, hit)

        with b.while_(stack):
            b.pop(node, stack)
            b.open_node(node, label, [first, second])
            b.switch(label, {
                Tag.ZERO: _nothing,
                Tag.SUCC: lambda: b.push(stack, first),
                Tag.ADD: both,
                Tag.MUL: both,
                Tag.NUMERAL: _nothing,
                Tag.VAR: variable,
            })


def _not_free(b: MiniBuilder, var: str, formula: str) -> None:
    """var 在 formula 中有自由出现时 reject"""
    with b.scratch(8) as (stack, entry, node, kind, label, first, second, flag):
        b.clear(stack)
        with b.temp() as marker:
            b.set(marker, FORMULA)
            b.pair(entry, formula, marker)
        b.push(stack, entry)

        def push(child: str, child_kind: int) -> None:
            with b.scratch(2) as (item, marker):
                b.set(marker, child_kind)
                b.pair(item, child, marker)
                b.push(stack, item)

        def pushes(*kinds: int) -> Callable[[], None]:
            def body() -> None:
                for name, child_kind in zip([first, second], kinds):
                    push(name, child_kind)
            return body

        def scope() -> None:
            b.eq_flag(flag, first, var)
            with b.when_zero(flag):
                push(second, FORMULA)

        with b.while_(stack):
            b.pop(entry, stack)
            b.unpair(node, kind, entry)
            b.open_node(node, label, [first, second])
            with b.if_zero(kind) as branch:
                b.switch(label, {
                    Tag.ZERO: _nothing,
                    Tag.SUCC: pushes(TERM),
                    Tag.ADD: pushes(TERM, TERM),
                    Tag.MUL: pushes(TERM, TERM),
                    Tag.NUMERAL: _nothing,
                    Tag.VAR: lambda: b.require_ne(first, var),
                })
                with branch.otherwise():
                    b.switch(label, {
                        Tag.EQ: pushes(TERM, TERM),
                        Tag.NOT: pushes(FORMULA),
                        Tag.IMPLIES: pushes(FORMULA, FORMULA),
                        Tag.FORALL: scope,
                    })


def _find_substituted(b: MiniBuilder, found: str, pattern: str, target: str,
                      var: str, var_code: str) -> None:
    """
    并行遍历 pattern / target，found := var 某个自由出现处 target 的子项；
    没有自由出现时 found := #Var(var)。结构不符直接 reject。
    """
    with b.scratch(13) as (stack, entry, pq, kind, p, q, lp, lq, p1, p2, q1, q2, flag):
        b.copy(found, var_code)
        b.clear(stack)
        _push_entry(b, stack, pattern, target, FORMULA)

        def pushes(*kinds: int) -> Callable[[], None]:
            def body() -> None:
                pairs = [(p1, q1), (p2, q2)][:len(kinds)]
                for (left, right), child_kind in reversed(list(zip(pairs, kinds))):
                    _push_entry(b, stack, left, right, child_kind)
            return body

        def scope() -> None:
            b.eq_flag(flag, p1, var)
            with b.when_zero(flag):
                b.require_eq(p1, q1)
                _push_entry(b, stack, p2, q2, FORMULA)

        with b.while_(stack):
            b.pop(entry, stack)
            b.unpair(pq, kind, entry)
            b.unpair(p, q, pq)
            with b.if_zero(kind) as branch:
                b.eq_flag(flag, p, var_code)
                with b.if_zero(flag) as inner:
                    b.open_node(p, lp, [p1, p2])
                    b.open_node(q, lq, [q1, q2])
                    b.require_eq(lp, lq)
                    b.switch(lp, {
                        Tag.ZERO: _nothing,
                        Tag.SUCC: pushes(TERM),
                        Tag.ADD: pushes(TERM, TERM),
                        Tag.MUL: pushes(TERM, TERM),
                        Tag.NUMERAL: _nothing,
                        Tag.VAR: _nothing,
                    })
                    with inner.otherwise():
                        b.copy(found, q)
                        b.clear(stack)
                with branch.otherwise():
                    b.open_node(p, lp, [p1, p2])
                    b.open_node(q, lq, [q1, q2])
                    b.require_eq(lp, lq)
                    b.switch(lp, {
                        Tag.EQ: pushes(TERM, TERM),
                        Tag.NOT: pushes(FORMULA),
                        Tag.IMPLIES: pushes(FORMULA, FORMULA),
                        Tag.FORALL: scope,
                    })


def _check_substituted(b: MiniBuilder, pattern: str, target: str, var: str,
                       var_code: str, term: str) -> None:
    """
    target 须等于 pattern 中 var 的自由出现全部换成 term 的结果，
    且这些出现不在 term 中变量的量词辖域内；否则 reject
    """
    with b.scratch(16) as (stack, entry, pq, info, kind, danger, p, q, lp, lq,
                           p1, p2, q1, q2, flag, hits):
        b.clear(stack)
        b.clear(danger)
        _push_entry(b, stack, pattern, target, FORMULA, danger)

        def pushes(*kinds: int) -> Callable[[], None]:
            def body() -> None:
                for (left, right), child_kind in zip([(p1, q1), (p2, q2)], kinds):
                    _push_entry(b, stack, left, right, child_kind, danger)
            return body

        def leaf() -> None:
            b.require_eq(p, q)

        def scope() -> None:
            b.require_eq(p1, q1)
            b.eq_flag(flag, p1, var)
            with b.if_zero(flag) as branch:
                _occurs(b, hits, p1, term)
                b.add(danger, danger, hits)
                _push_entry(b, stack, p2, q2, FORMULA, danger)
                with branch.otherwise():
                    b.require_eq(p2, q2)

        with b.while_(stack):
            b.pop(entry, stack)
            b.unpair(pq, info, entry)
            b.unpair(p, q, pq)
            b.unpair(kind, danger, info)
            with b.if_zero(kind) as branch:
                b.eq_flag(flag, p, var_code)
                with b.if_zero(flag) as inner:
                    b.open_node(p, lp, [p1, p2])
                    b.open_node(q, lq, [q1, q2])
                    b.require_eq(lp, lq)
                    b.switch(lp, {
                        Tag.ZERO: leaf,
                        Tag.SUCC: pushes(TERM),
                        Tag.ADD: pushes(TERM, TERM),
                        Tag.MUL: pushes(TERM, TERM),
                        Tag.NUMERAL: leaf,
                        Tag.VAR: leaf,
                    })
                    with inner.otherwise():
                        b.require_eq(q, term)
                        b.require_zero(danger)
                with branch.otherwise():
                    b.open_node(p, lp, [p1, p2])
                    b.open_node(q, lq, [q1, q2])
                    b.require_eq(lp, lq)
                    b.switch(lp, {
                        Tag.EQ: pushes(TERM, TERM),
                        Tag.NOT: pushes(FORMULA),
                        Tag.IMPLIES: pushes(FORMULA, FORMULA),
                        Tag.FORALL: scope,
                    })


def _differ_by(b: MiniBuilder, left: str, right: str, t: str, u: str) -> None:
    """两项只在 left 显示 t、right 显示 u 的位置不同；否则 reject"""
    with b.scratch(13) as (stack, entry, x, y, same, hit, other, lx, ly, x1, x2, y1, y2):
        b.clear(stack)
        b.pair(entry, left, right)
        b.push(stack, entry)

        def pushes(count: int) -> Callable[[], None]:
            def body() -> None:
                for first, second in [(x1, y1), (x2, y2)][:count]:
                    with b.temp() as item:
                        b.pair(item, first, second)
                        b.push(stack, item)
            return body

        with b.while_(stack):
            b.pop(entry, stack)
            b.unpair(x, y, entry)
            b.eq_flag(same, x, y)
            with b.when_zero(same):
                b.eq_flag(hit, x, t)
                b.eq_flag(other, y, u)
                b.mul(hit, hit, other)
                with b.when_zero(hit):
                    b.open_node(x, lx, [x1, x2])
                    b.open_node(y, ly, [y1, y2])
                    b.require_eq(lx, ly)
                    b.switch(lx, {Tag.SUCC: pushes(1), Tag.ADD: pushes(2), Tag.MUL: pushes(2)})


# ---------------------------------------------------------- matchers

def _match_a1(b: MiniBuilder, f: str) -> None:
    with b.scratch(4) as (phi, rest, psi, chi):
        b.expect(f, Tag.IMPLIES, [phi, rest])
        b.expect(rest, Tag.IMPLIES, [psi, chi])
        b.require_eq(chi, phi)


def _match_a2(b: MiniBuilder, f: str) -> None:
    with b.scratch(10) as (left, right, phi, inner, psi, chi, r1, r2, x, y):
        b.expect(f, Tag.IMPLIES, [left, right])
        b.expect(left, Tag.IMPLIES, [phi, inner])
        b.expect(inner, Tag.IMPLIES, [psi, chi])
        b.expect(right, Tag.IMPLIES, [r1, r2])
        b.expect(r1, Tag.IMPLIES, [x, y])
        b.require_eq(x, phi)
        b.require_eq(y, psi)
        b.expect(r2, Tag.IMPLIES, [x, y])
        b.require_eq(x, phi)
        b.require_eq(y, chi)


def _match_a3(b: MiniBuilder, f: str) -> None:
    with b.scratch(8) as (left, right, n1, n2, psi, phi, x, y):
        b.expect(f, Tag.IMPLIES, [left, right])
        b.expect(left, Tag.IMPLIES, [n1, n2])
        b.expect(n1, Tag.NOT, [psi])
        b.expect(n2, Tag.NOT, [phi])
        b.expect(right, Tag.IMPLIES, [x, y])
        b.require_eq(x, phi)
        b.require_eq(y, psi)


def _match_q1(b: MiniBuilder, f: str) -> None:
    with b.scratch(6) as (left, instance, var, body, var_code, term):
        b.expect(f, Tag.IMPLIES, [left, instance])
        b.expect(left, Tag.FORALL, [var, body])
        _var_code(b, var_code, var)
        _find_substituted(b, term, body, instance, var, var_code)
        _check_substituted(b, body, instance, var, var_code, term)


def _match_q2(b: MiniBuilder, f: str) -> None:
    with b.scratch(10) as (left, right, var, inner, phi, psi, phi2, scoped, var2, psi2):
        b.expect(f, Tag.IMPLIES, [left, right])
        b.expect(left, Tag.FORALL, [var, inner])
        b.expect(inner, Tag.IMPLIES, [phi, psi])
        b.expect(right, Tag.IMPLIES, [phi2, scoped])
        b.expect(scoped, Tag.FORALL, [var2, psi2])
        b.require_eq(phi2, phi)
        b.require_eq(var2, var)
        b.require_eq(psi2, psi)
        _not_free(b, var, phi)


def _match_e1(b: MiniBuilder, f: str) -> None:
    with b.scratch(2) as (left, right):
        b.expect(f, Tag.EQ, [left, right])
        b.require_eq(left, right)


def _match_e2(b: MiniBuilder, f: str) -> None:
    with b.scratch(10) as (eq, rest, t, u, before, after, a1, a2, b1, b2):
        b.expect(f, Tag.IMPLIES, [eq, rest])
        b.expect(eq, Tag.EQ, [t, u])
        b.expect(rest, Tag.IMPLIES, [before, after])
        b.expect(before, Tag.EQ, [a1, a2])
        b.expect(after, Tag.EQ, [b1, b2])
        _differ_by(b, a1, b1, t, u)
        _differ_by(b, a2, b2, t, u)


def _match_pa1(b: MiniBuilder, f: str) -> None:
    with b.scratch(5) as (g, eq, left, right, inner):
        _strip_forall(b, g, f)
        b.expect(g, Tag.NOT, [eq])
        b.expect(eq, Tag.EQ, [left, right])
        _succ_view(b, inner, left)
        _require_zero_term(b, right)


def _match_pa2(b: MiniBuilder, f: str) -> None:
    with b.scratch(9) as (g, before, after, l1, r1, l2, r2, s1, s2):
        _strip_forall(b, g, f)
        b.expect(g, Tag.IMPLIES, [before, after])
        b.expect(before, Tag.EQ, [l1, r1])
        b.expect(after, Tag.EQ, [l2, r2])
        _succ_view(b, s1, l1)
        _succ_view(b, s2, r1)
        b.require_eq(l2, s1)
        b.require_eq(r2, s2)


def _match_pa3(b: MiniBuilder, f: str) -> None:
    with b.scratch(5) as (g, left, right, x, z):
        _strip_forall(b, g, f)
        b.expect(g, Tag.EQ, [left, right])
        b.expect(left, Tag.ADD, [x, z])
        _require_zero_term(b, z)
        b.require_eq(x, right)


def _match_pa4(b: MiniBuilder, f: str) -> None:
    with b.scratch(8) as (g, left, right, x, s, w, y, total):
        _strip_forall(b, g, f)
        b.expect(g, Tag.EQ, [left, right])
        b.expect(left, Tag.ADD, [x, s])
        b.expect(right, Tag.SUCC, [w])
        _succ_view(b, y, s)
        b.node(total, Tag.ADD, [x, y])
        b.require_eq(w, total)


def _match_pa5(b: MiniBuilder, f: str) -> None:
    with b.scratch(5) as (g, left, right, x, z):
        _strip_forall(b, g, f)
        b.expect(g, Tag.EQ, [left, right])
        b.expect(left, Tag.MUL, [x, z])
        _require_zero_term(b, z)
        _require_zero_term(b, right)


def _match_pa6(b: MiniBuilder, f: str) -> None:
    with b.scratch(8) as (g, left, right, x, s, y, product, total):
        _strip_forall(b, g, f)
        b.expect(g, Tag.EQ, [left, right])
        b.expect(left, Tag.MUL, [x, s])
        _succ_view(b, y, s)
        b.node(product, Tag.MUL, [x, y])
        b.node(total, Tag.ADD, [product, x])
        b.require_eq(right, total)


def _match_ind(b: MiniBuilder, f: str) -> None:
    with b.scratch(12) as (base, rest, step, goal, var1, body, var, phi, phi1, then,
                           var_code, term):
        b.expect(f, Tag.IMPLIES, [base, rest])
        b.expect(rest, Tag.IMPLIES, [step, goal])
        b.expect(step, Tag.FORALL, [var1, body])
        b.expect(goal, Tag.FORALL, [var, phi])
        b.expect(body, Tag.IMPLIES, [phi1, then])
        b.require_eq(var1, var)
        b.require_eq(phi1, phi)
        _var_code(b, var_code, var)
        b.clear(term)
        _check_substituted(b, phi, base, var, var_code, term)
        b.node(term, Tag.SUCC, [var_code])
        _check_substituted(b, phi, then, var, var_code, term)


def _match_num(b: MiniBuilder, f: str) -> None:
    with b.scratch(5) as (left, right, value, inner, succ):
        b.expect(f, Tag.EQ, [left, right])
        b.expect(left, Tag.NUMERAL, [value])
        with b.if_zero(value) as branch:
            b.require_zero(right)
            with branch.otherwise():
                b.dec(value)
                _numeral_code(b, inner, value)
                b.node(succ, Tag.SUCC, [inner])
                b.require_eq(right, succ)


MATCHERS: Dict[str, Callable[[MiniBuilder, str], None]] = {
    "A1": _match_a1, "A2": _match_a2, "A3": _match_a3, "Q1": _match_q1, "Q2": _match_q2,
    "E1": _match_e1, "E2": _match_e2, "PA1": _match_pa1, "PA2": _match_pa2,
    "PA3": _match_pa3, "PA4": _match_pa4, "PA5": _match_pa5, "PA6": _match_pa6,
    "IND": _match_ind, "NUM": _match_num,
}


# ----------------------------------------------------------- programs

@contextmanager
def _each_line(b: MiniBuilder, line: str, head: str, tail: str) -> Iterator[None]:
    """依次把每一行放进 line：先是 head，再从 tail 逐个弹出"""
    with b.scratch(2) as (rest, more):
        b.copy(line, head)
        b.copy(rest, tail)
        b.set(more, 1)
        with b.while_(more):
            b.dec(more)
            yield
            with b.when_positive(rest):
                b.pop(line, rest)
                b.inc(more)


def _task_structure(b: MiniBuilder, head: str, tail: str) -> None:
    """Task 1（证明已确认非空，head / tail 是它的首行与其余行）"""
    with b.scratch(5) as (line, formula, warrant, label, payload):
        with _each_line(b, line, head, tail):
            b.unpair(formula, warrant, line)
            validate_formula_code(b, formula)
            b.unpair(label, payload, warrant)
            with b.temp() as bound:
                b.set(bound, 3)
                b.require_less(label, bound)


def _task_warrants(b: MiniBuilder, proof: str, head: str, tail: str, last: str) -> None:
    """Task 2；结束时 last 为最后一行的公式码"""
    with b.scratch(6) as (line, number, formula, warrant, label, payload):
        b.clear(number)

        def axiom() -> None:
            cases = {
                AXIOM_TABLE.id_of(name): (lambda match=match: match(b, formula))
                for name, match in MATCHERS.items()
            }
            b.switch(payload, cases)

        def modus_ponens() -> None:
            with b.scratch(5) as (minor, major, f_minor, f_major, implication):
                b.unpair(minor, major, payload)
                for ref in (minor, major):
                    b.require_positive(ref)
                    b.require_less(ref, number)
                _line_formula(b, f_minor, proof, minor)
                _line_formula(b, f_major, proof, major)
                b.node(implication, Tag.IMPLIES, [f_minor, formula])
                b.require_eq(f_major, implication)

        def generalization() -> None:
            with b.scratch(4) as (source, var, f_source, quantified):
                b.unpair(source, var, payload)
                b.require_positive(source)
                b.require_less(source, number)
                _line_formula(b, f_source, proof, source)
                b.node(quantified, Tag.FORALL, [var, f_source])
                b.require_eq(formula, quantified)

        with _each_line(b, line, head, tail):
            b.inc(number)
            b.unpair(formula, warrant, line)
            b.unpair(label, payload, warrant)
            b.switch(label, {0: axiom, 1: modus_ponens, 2: generalization})
            b.copy(last, formula)


@lru_cache(maxsize=None)
def checker_program() -> MiniProgram:
    """输入 (k, a)；接受当且仅当 a 是 k 所编码公式的证明的编码"""
    b = MiniBuilder(inputs=("k", "a"))
    b.declare("head", "tail", "last")
    # 首行只拆一次，两个任务共用
    b.require_positive("a")
    b.dec("a")
    b.unpair("head", "tail", "a")
    b.inc("a")
    _task_structure(b, "head", "tail")
    _task_warrants(b, "a", "head", "tail", "last")
    b.require_eq("last", "k")
    b.accept()
    program = b.build()
    logger.info("checker program: %d statements over %d variables",
                program.statement_count(), len(program.declared))
    return program


@lru_cache(maxsize=None)
def universal_checker_machine() -> CounterMachine:
    return compile_minilang(checker_program())


def _member(b: MiniBuilder, flag: str, value: str, items: str) -> None:
    """flag := value 是否出现在序列 items 中（出现次数）"""
    with b.scratch(3) as (rest, head, hit):
        b.clear(flag)
        b.copy(rest, items)
        with b.while_(rest):
            b.pop(head, rest)
            b.eq_flag(hit, head, value)
            b.add(flag, flag, hit)


def _single_free_var(b: MiniBuilder, found: str, formula: str) -> None:
    """formula 恰有一个自由变量时 found := 它的下标，否则 reject"""
    with b.scratch(11) as (stack, entry, nk, bound, node, kind, label, first, second, flag, more):
        with b.temp() as seen:
            b.clear(seen)
            b.clear(found)
            b.clear(stack)
            b.clear(bound)
            b.copy(node, formula)
            b.set(kind, FORMULA)

            def push(child: str, child_kind: int, scope: str) -> None:
                _push_entry(b, stack, child, child, child_kind, scope)

            def pushes(*kinds: int) -> Callable[[], None]:
                def body() -> None:
                    for name, child_kind in reversed(list(zip([first, second], kinds))):
                        push(name, child_kind, bound)
                return body

            def variable() -> None:
                _member(b, flag, first, bound)
                with b.when_zero(flag):
                    with b.if_zero(seen) as branch:
                        b.copy(found, first)
                        b.inc(seen)
                        with branch.otherwise():
                            b.require_eq(first, found)

            def scope() -> None:
                with b.temp() as inner:
                    b.copy(inner, bound)
                    b.push(inner, first)
                    push(second, FORMULA, inner)

            b.set(more, 1)
            with b.while_(more):
                b.dec(more)
                b.open_node(node, label, [first, second])
                with b.if_zero(kind) as branch:
                    b.switch(label, {
                        Tag.ZERO: _nothing,
                        Tag.SUCC: pushes(TERM),
                        Tag.ADD: pushes(TERM, TERM),
                        Tag.MUL: pushes(TERM, TERM),
                        Tag.NUMERAL: _nothing,
                        Tag.VAR: variable,
                    })
                    with branch.otherwise():
                        b.switch(label, {
                            Tag.EQ: pushes(TERM, TERM),
                            Tag.NOT: pushes(FORMULA),
                            Tag.IMPLIES: pushes(FORMULA, FORMULA),
                            Tag.FORALL: scope,
                        })
                with b.when_positive(stack):
                    b.pop(entry, stack)
                    b.unpair(nk, entry, entry)
                    b.unpair(node, label, nk)
                    b.unpair(kind, bound, entry)
                    b.inc(more)
            b.require_positive(seen)


@lru_cache(maxsize=None)
def diag_program() -> MiniProgram:
    """输入 (n, m)；接受当且仅当 m 是 n 所编码公式在唯一自由变量处代入 numeral(n) 的编码"""
    b = MiniBuilder(inputs=("n", "m"))
    b.declare("var", "var_code", "term")
    validate_formula_code(b, "n")
    validate_formula_code(b, "m")
    _single_free_var(b, "var", "n")
    _var_code(b, "var_code", "var")
    _numeral_code(b, "term", "n")
    _check_substituted(b, "n", "m", "var", "var_code", "term")
    b.accept()
    return b.build()
