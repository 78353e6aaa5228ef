"""
异常层级 (Errors)

所有领域错误都继承自 ForgeError，CLI 将其映射为退出码 1；
参数错误由 argparse 处理，退出码 2。
"""

from typing import Optional


class ForgeError(Exception):
    """领域错误基类"""


class FormulaSyntaxError(ForgeError):
    """公式文本语法错误，携带行列位置"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnknownSymbolError(FormulaSyntaxError):
    """出现不属于 {0, S, +, *, =} 语言的符号"""


class DecodeError(ForgeError):
    """Gödel 码无法解码"""


class NotAFormulaCode(DecodeError):
    """不属于 FC 的自然数"""


class NotATermCode(DecodeError):
    """不是项的编码"""


class NotAProofCode(DecodeError):
    """不是证明序列的编码"""


class ProofFormatError(ForgeError):
    """证明文件格式或行号引用错误"""


class SchemaError(ForgeError):
    """未知的公理模式编号或名称"""


class SynthesisError(ForgeError):
    """证明合成的前置条件不满足"""


class MachineError(ForgeError):
    """计数器机器结构非法"""


class MiniLangError(ForgeError):
    """MiniLang 程序非法（未声明变量、宏参数个数不符）"""


class WitnessError(ForgeError):
    """见证构造失败（运行未接受、赋值不完整）"""


class EquationFormatError(ForgeError):
    """方程 / 方程组文件格式错误"""


class ParameterError(ForgeError):
    """参数重分类或代入时参数名非法"""


class RepresentationError(ForgeError):
    """多项式无法表示为 PA 项（负系数、变量映射不全）"""


class CertificateError(ForgeError):
    """定理证书未通过检查器"""


class BudgetExceeded(ForgeError):
    """
    预算超限 - 对象规模超过配置上限时的优雅拒绝
    """

    def __init__(self, resource: str, limit: int, requested: Optional[int] = None):
        self.resource = resource
        self.limit = limit
        self.requested = requested
        detail = f"{resource} limit {limit}"
        if requested is not None:
            detail += f", requested {requested}"
        super().__init__(f"out of budget: {detail}")
