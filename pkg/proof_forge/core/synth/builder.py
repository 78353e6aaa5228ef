"""
证明构造器 (ProofBuilder)

[职责]
- 逐行累积带依据的证明，相同公式只推导一次
- 命题演算工具：恒等、假言三段论、双重否定、换质位、否定后件
- 等词工具：对称、传递、S / + / * 同余（均经由 E2）

每个方法返回所得公式所在的行号（1-based）。
"""

import logging
from typing import Dict, List, Optional

from proof_forge.core.checker.schemas import AXIOM_TABLE, AxiomTable
from proof_forge.core.codec.proofs import MP, AnnotatedProof, Axiom, Gen, ProofLine
from proof_forge.core.pa.printer import print_formula
from proof_forge.core.pa.syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Succ, Term, VarId,
)
from proof_forge.errors import SynthesisError

logger = logging.getLogger(__name__)


class ProofBuilder:
    """
    [职责] 带去重的证明累积器
    [场景] 数字等式 / 不等式合成与存在引入
    """

    def __init__(self, table: AxiomTable = AXIOM_TABLE):
        self.table = table
        self.lines: List[ProofLine] = []
        self._index: Dict[Formula, int] = {}

    def __len__(self) -> int:
        return len(self.lines)

    def formula(self, number: int) -> Formula:
        return self.lines[number - 1].formula

    def find(self, formula: Formula) -> Optional[int]:
        return self._index.get(formula)

    def _append(self, line: ProofLine) -> int:
        existing = self._index.get(line.formula)
        if existing is not None:
            return existing
        self.lines.append(line)
        number = len(self.lines)
        self._index[line.formula] = number
        return number

    # ------------------------------------------------------- primitives

    def axiom(self, formula: Formula, name: str) -> int:
        schema = self.table.id_of(name)
        if not self.table.is_axiom_instance(formula, schema):
            raise SynthesisError(f"{print_formula(formula)} is not an instance of {name}")
        return self._append(ProofLine(formula, Axiom(schema)))

    def mp(self, minor: int, major: int) -> int:
        """由第 minor 行 A 与第 major 行 A -> B 得 B"""
        implication = self.formula(major)
        if not (isinstance(implication, Implies) and implication.antecedent == self.formula(minor)):
            raise SynthesisError(f"line {major} is not an implication from line {minor}")
        return self._append(ProofLine(implication.consequent, MP(minor, major)))

    def gen(self, line: int, var: VarId) -> int:
        return self._append(ProofLine(ForAll(var, self.formula(line)), Gen(line, var)))

    def include(self, proof: AnnotatedProof) -> int:
        """并入一个现成证明，返回其结论所在行"""
        mapping: Dict[int, int] = {}
        for number, line in enumerate(proof.lines, start=1):
            warrant = line.warrant
            if isinstance(warrant, MP):
                warrant = MP(mapping[warrant.l], mapping[warrant.m])
            elif isinstance(warrant, Gen):
                warrant = Gen(mapping[warrant.j], warrant.var)
            mapping[number] = self._append(ProofLine(line.formula, warrant))
        return mapping[len(proof.lines)]

    def build(self, conclusion: int) -> AnnotatedProof:
        """
        以第 conclusion 行为结论输出证明；若它不是最后一行，则复制该行
        （依据不变，引用仍指向更早的行）
        """
        lines = list(self.lines)
        if conclusion != len(lines):
            lines.append(lines[conclusion - 1])
        logger.debug("built proof of %d lines", len(lines))
        return AnnotatedProof(tuple(lines))

    # ---------------------------------------------------- propositional

    def identity(self, phi: Formula) -> int:
        """phi -> phi"""
        target = Implies(phi, phi)
        if self.find(target):
            return self.find(target)
        inner = Implies(phi, phi)
        s1 = self.axiom(Implies(phi, Implies(inner, phi)), "A1")
        s2 = self.axiom(Implies(Implies(phi, Implies(inner, phi)),
                                Implies(Implies(phi, inner), inner)), "A2")
        s3 = self.mp(s1, s2)
        s4 = self.axiom(Implies(phi, inner), "A1")
        return self.mp(s4, s3)

    def weaken(self, line: int, hypothesis: Formula) -> int:
        """由 B 得 A -> B"""
        b = self.formula(line)
        return self.mp(line, self.axiom(Implies(b, Implies(hypothesis, b)), "A1"))

    def mp_under(self, nested: int, premise: int) -> int:
        """由 A -> (B -> C) 与 A -> B 得 A -> C"""
        abc = self.formula(nested)
        ab = self.formula(premise)
        if not (isinstance(abc, Implies) and isinstance(abc.consequent, Implies)):
            raise SynthesisError("mp_under expects A -> (B -> C)")
        a, b, c = abc.antecedent, abc.consequent.antecedent, abc.consequent.consequent
        if ab != Implies(a, b):
            raise SynthesisError("mp_under premise does not match")
        s = self.axiom(Implies(abc, Implies(ab, Implies(a, c))), "A2")
        return self.mp(premise, self.mp(nested, s))

    def hs(self, first: int, second: int) -> int:
        """由 A -> B 与 B -> C 得 A -> C"""
        ab = self.formula(first)
        bc = self.formula(second)
        chained = isinstance(ab, Implies) and isinstance(bc, Implies)
        if not (chained and ab.consequent == bc.antecedent):
            raise SynthesisError("hypothetical syllogism needs A -> B and B -> C")
        a_bc = self.weaken(second, ab.antecedent)
        return self.mp_under(a_bc, first)

    def dne(self, phi: Formula) -> int:
        """~~phi -> phi"""
        target = Implies(Not(Not(phi)), phi)
        if self.find(target):
            return self.find(target)
        nn = Not(Not(phi))
        nnnn = Not(Not(nn))
        nnn = Not(nn)
        s1 = self.axiom(Implies(nn, Implies(nnnn, nn)), "A1")
        s2 = self.axiom(Implies(Implies(nnnn, nn), Implies(Not(phi), nnn)), "A3")
        s3 = self.axiom(Implies(Implies(Not(phi), nnn), Implies(nn, phi)), "A3")
        s4 = self.hs(s1, s2)
        s5 = self.hs(s4, s3)
        return self.mp_under(s5, self.identity(nn))

    def dni(self, phi: Formula) -> int:
        """phi -> ~~phi"""
        target = Implies(phi, Not(Not(phi)))
        if self.find(target):
            return self.find(target)
        s1 = self.axiom(Implies(Implies(Not(Not(Not(phi))), Not(phi)), target), "A3")
        return self.mp(self.dne(Not(phi)), s1)

    def contrapose(self, line: int) -> int:
        """由 P -> Q 得 ~Q -> ~P"""
        pq = self.formula(line)
        if not isinstance(pq, Implies):
            raise SynthesisError("contraposition needs an implication")
        p, q = pq.antecedent, pq.consequent
        s1 = self.hs(self.dne(p), line)
        s2 = self.hs(s1, self.dni(q))
        s3 = self.axiom(Implies(Implies(Not(Not(p)), Not(Not(q))), Implies(Not(q), Not(p))), "A3")
        return self.mp(s2, s3)

    def modus_tollens(self, implication: int, negation: int) -> int:
        """由 P -> Q 与 ~Q 得 ~P"""
        return self.mp(negation, self.contrapose(implication))

    # ---------------------------------------------------------- equality

    def reflexivity(self, term: Term) -> int:
        return self.axiom(Eq(term, term), "E1")

    def e2(self, eq: Formula, before: Formula, after: Formula) -> int:
        """E2 实例 t = u -> (A -> B)"""
        return self.axiom(Implies(eq, Implies(before, after)), "E2")

    def rewrite(self, eq_line: int, atom_line: int, after: Formula) -> int:
        """由 t = u 与原子 A 得 B（B 由 A 把若干 t 换成 u 得到）"""
        s = self.e2(self.formula(eq_line), self.formula(atom_line), after)
        return self.mp(atom_line, self.mp(eq_line, s))

    def symmetry(self, line: int) -> int:
        """由 t = u 得 u = t"""
        eq = self.formula(line)
        if eq.left == eq.right:
            return line
        refl = self.reflexivity(eq.left)
        return self.rewrite(line, refl, Eq(eq.right, eq.left))

    def sym_implication(self, t: Term, u: Term) -> int:
        """t = u -> u = t"""
        eq = Eq(t, u)
        s1 = self.e2(eq, Eq(t, t), Eq(u, t))
        refl = self.reflexivity(t)
        s2 = self.weaken(refl, eq)
        return self.mp_under(s1, s2)

    def transitivity(self, first: int, second: int) -> int:
        """由 t = u 与 u = v 得 t = v"""
        tu, uv = self.formula(first), self.formula(second)
        if tu.right != uv.left:
            raise SynthesisError("transitivity needs matching middle terms")
        if uv.left == uv.right:
            return first
        if tu.left == tu.right:
            return second
        return self.rewrite(second, first, Eq(tu.left, uv.right))

    def cong_succ(self, line: int) -> int:
        """由 t = u 得 S(t) = S(u)"""
        eq = self.formula(line)
        if eq.left == eq.right:
            return self.reflexivity(Succ(eq.left))
        refl = self.reflexivity(Succ(eq.left))
        return self.rewrite(line, refl, Eq(Succ(eq.left), Succ(eq.right)))

    def _cong_binary(self, op, left_line: int, right_line: int) -> int:
        t1, t2 = self.formula(left_line).left, self.formula(left_line).right
        u1, u2 = self.formula(right_line).left, self.formula(right_line).right
        current = self.reflexivity(op(t1, u1))
        if t1 != t2:
            current = self.rewrite(left_line, current, Eq(op(t1, u1), op(t2, u1)))
        if u1 != u2:
            current = self.rewrite(right_line, current, Eq(op(t1, u1), op(t2, u2)))
        return current

    def cong_add(self, left_line: int, right_line: int) -> int:
        """由 t = t' 与 u = u' 得 t + u = t' + u'"""
        return self._cong_binary(Add, left_line, right_line)

    def cong_mul(self, left_line: int, right_line: int) -> int:
        """由 t = t' 与 u = u' 得 t * u = t' * u'"""
        return self._cong_binary(Mul, left_line, right_line)
