"""
Pell 方程工具

[职责]
- pell_pair(a, n)：x² - (a²-1)y² = 1 的第 n 个非负解 (x_n(a), y_n(a))
- 下标块：一组多项式条件，在 a ≥ 3 时恰好刻画 y = y_k(a)，连同构造见证的算法
[约定]
- 下标块的条件都乘上分支因子 gate，gate = 0 时整块自动成立
- 块内辅助未知数以 prefix 为前缀
"""

from typing import Dict, List, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.polynomial import Polynomial, var
from proof_forge.core.diophantine.system import PolyEq
from proof_forge.errors import WitnessError

BLOCK_FIELDS = ("x", "y", "u", "v", "s", "t", "b", "r", "p", "q", "c", "d", "e", "ga", "v1")


def pell_pair(a: int, n: int) -> Tuple[int, int]:
    """(a + √(a²-1))^n = x + y√(a²-1)，二进制快速幂"""
    if a < 1:
        raise ValueError(f"Pell base must be positive, got {a}")
    d = a * a - 1
    x, y = 1, 0
    bx, by = a, 1
    while n:
        if n & 1:
            x, y = x * bx + d * y * by, x * by + y * bx
        n >>= 1
        if n:
            bx, by = bx * bx + d * by * by, 2 * bx * by
    return x, y


def pell_bits(a: int, n: int) -> int:
    """x_n(a) 的比特长度上界"""
    return n * (a.bit_length() + 1) + 1


def block_names(prefix: str) -> Dict[str, str]:
    return {name: f"{prefix}.{name}" for name in BLOCK_FIELDS}


def index_block(prefix: str, a: Polynomial, k: Polynomial, gate: Polynomial) -> List[PolyEq]:
    """
    y = y_k(a) 的条件组（a ≥ 3 由块内自带）

    x² - (a²-1)y² = 1，u² - (a²-1)v² = 1，s² - (b²-1)t² = 1，
    v = r·y²，v ≥ 1，b = 1 + 4py = a + qu，s = x + cu，t = k + 4(d-1)y，k ≤ y
    """
    n = {name: var(full) for name, full in block_names(prefix).items()}
    x, y, u, v, s, t, b = n["x"], n["y"], n["u"], n["v"], n["s"], n["t"], n["b"]
    d_a = a * a - 1
    raw = [
        a - 3 - n["ga"],
        x * x - d_a * y * y - 1,
        u * u - d_a * v * v - 1,
        s * s - (b * b - 1) * t * t - 1,
        v - n["r"] * y * y,
        v - 1 - n["v1"],
        b - 1 - 4 * n["p"] * y,
        b - a - n["q"] * u,
        s - x - n["c"] * u,
        t + 4 * y - k - 4 * n["d"] * y,
        y - k - n["e"],
    ]
    return [PolyEq(gate * poly) for poly in raw]


def index_block_witness(prefix: str, a: int, k: int,
                        budget: Budget = DEFAULT_BUDGET) -> Dict[str, int]:
    """
    为 index_block 构造见证

    Raises:
        WitnessError: a < 3 或 k < 1
        BudgetExceeded: 辅助 Pell 解超出比特预算
    """
    if a < 3 or k < 1:
        raise WitnessError(f"index block needs a >= 3 and k >= 1, got a={a}, k={k}")
    x, y = pell_pair(a, k)
    # y² | y_n 当且仅当 k·y | n；取偶数 n 保证 u 为奇数
    n = k * y if (k * y) % 2 == 0 else 2 * k * y
    budget.check_bit_estimate(pell_bits(a, n), "Pell witness bits")
    u, v = pell_pair(a, n)
    r, rem = divmod(v, y * y)
    if rem:
        raise WitnessError(f"y_{k}({a})^2 does not divide y_{n}")
    modulus = 4 * y
    q = ((1 - a) * pow(u, -1, modulus)) % modulus
    b = a + q * u
    budget.check_bit_estimate(pell_bits(b, k), "Pell witness bits")
    s, t = pell_pair(b, k)
    c, rem_c = divmod(s - x, u)
    d, rem_d = divmod(t - k, modulus)
    if rem_c or rem_d or c < 0 or d < 0:
        raise WitnessError(f"index block congruences failed for a={a}, k={k}")
    values = {
        "x": x, "y": y, "u": u, "v": v, "s": s, "t": t, "b": b, "r": r,
        "p": (b - 1) // modulus, "q": q, "c": c, "d": d + 1, "e": y - k,
        "ga": a - 3, "v1": v - 1,
    }
    names = block_names(prefix)
    return {names[key]: value for key, value in values.items()}


def idle_block(prefix: str) -> Dict[str, int]:
    """分支未被选中时块内未知数取 0"""
    return {name: 0 for name in block_names(prefix).values()}
