"""
大数与十进制文本互转

解释器默认限制 int/str 互转的位数 (4300)；证明码与对角句中的数字远超此限。
这里的转换只在调用期间解除限制，是否允许输出由调用方按 numeral_digit_limit 决定。
限制是进程级的，解除与恢复由模块锁串行化。
"""

import sys
import threading
from contextlib import contextmanager
from typing import Iterator

_SAFE_BITS = 13_000
_SAFE_CHARS = 4_000
_LOG10_2 = 0.30102999566398120

_limit_lock = threading.RLock()


@contextmanager
def unlimited_digits() -> Iterator[None]:
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    with _limit_lock:
        previous = getter()
        sys.set_int_max_str_digits(0)
        try:
            yield
        finally:
            sys.set_int_max_str_digits(previous)


def to_decimal(value: int) -> str:
    if value.bit_length() <= _SAFE_BITS:
        return str(value)
    with unlimited_digits():
        return str(value)


def from_decimal(text: str) -> int:
    if len(text) <= _SAFE_CHARS:
        return int(text)
    with unlimited_digits():
        return int(text)


def decimal_digits(value: int) -> int:
    """十进制位数；超大数由比特长度估计后再与 10 的幂比较校正"""
    value = abs(value)
    if value.bit_length() <= _SAFE_BITS:
        return len(str(value))
    estimate = int(value.bit_length() * _LOG10_2) + 1
    if value < 10 ** (estimate - 1):
        return estimate - 1
    if value >= 10 ** estimate:
        return estimate + 1
    return estimate
