"""
报告模型 (Reports)

[职责] 机器可读的产物说明：各阶段统计、可行性表、对角构造证书、不可判定方程报告
[场景] CLI 把它们序列化为 JSON 附带文件；版本与时间只出现在附带文件中
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class StageStats(BaseModel):
    """一个降阶阶段结束后方程组的规模"""

    stage: str
    parameters: int
    unknowns: int
    conditions: Dict[str, int] = Field(default_factory=dict)
    degree: int = 0
    monomials: Optional[int] = None
    materialized: bool = True


class FeasibilityReport(BaseModel):
    """
    可行性表

    - checker_steps: 通用检查机在最小语料证明上的步数（未在燃料内停机时为 None）
    - stages: 通用方程组每个阶段的统计
    - largest_witness_bits: 最小实例上最大见证分量的比特长度
    - refusals: 超出预算而未完成的步骤及原因
    """

    machine_instructions: int
    machine_registers: int
    smallest_proof: str
    smallest_proof_code_bits: int
    checker_steps: Optional[int] = None
    checker_fuel: int
    stages: List[StageStats] = Field(default_factory=list)
    largest_witness_bits: Optional[int] = None
    refusals: List[str] = Field(default_factory=list)


class Certificate(BaseModel):
    """对角构造证书：θ 的文本与编码，以及得到的句子"""

    kind: str
    theta: str
    theta_code: str
    sentence: str


class UndecidableReport(BaseModel):
    """不可判定命题生成器的输出说明"""

    theorem: str
    negation_code: str
    equation_unknowns: int
    sentence: str
    search_bound: int
    solution_found: bool
    notes: List[str] = Field(default_factory=list)
    toy: bool = False
