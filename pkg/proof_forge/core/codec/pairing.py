"""
配对与序列编码

pair 为 Cantor 配对；序列编码 seq_code([]) = 0，
seq_code(h:t) = pair(h, seq_code(t)) + 1。
"""

from math import isqrt
from typing import List, Optional, Sequence, Tuple

from proof_forge.config import Budget


def pair(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("pair is defined on naturals only")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(c: int) -> Tuple[int, int]:
    if c < 0:
        raise ValueError("unpair is defined on naturals only")
    w = (isqrt(8 * c + 1) - 1) // 2
    b = c - w * (w + 1) // 2
    return w - b, b


def checked_pair(a: int, b: int, budget: Optional[Budget] = None, what: str = "code bits") -> int:
    """按比特估计先检查预算再配对"""
    if budget is not None:
        budget.check_bit_estimate(2 * max(a.bit_length(), b.bit_length()) + 1, what)
    return pair(a, b)


def seq_code(items: Sequence[int], budget: Optional[Budget] = None) -> int:
    code = 0
    for item in reversed(items):
        code = checked_pair(item, code, budget) + 1
    return code


def seq_decode(code: int, limit: Optional[int] = None) -> Optional[List[int]]:
    """
    解码序列；若给出 limit 且元素个数超过 limit，返回 None
    """
    items: List[int] = []
    while code > 0:
        if limit is not None and len(items) >= limit:
            return None
        head, code = unpair(code - 1)
        items.append(head)
    return items


def seq_decode_exact(code: int, length: int) -> Optional[List[int]]:
    """恰好 length 个元素时返回列表，否则 None"""
    items = seq_decode(code, limit=length)
    if items is None or len(items) != length:
        return None
    return items
