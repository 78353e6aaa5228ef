"""
配置层 (Settings)

读取顺序：.env 文件 (python-dotenv) → 环境变量 FORGE_* → 代码默认值。
"""

import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

from proof_forge.errors import BudgetExceeded


class ForgeSettings(BaseSettings):
    """
    [职责] 全局配置 - 预算上限、搜索并行度、日志级别
    [场景] CLI 启动与流水线构造时读取
    """

    model_config = SettingsConfigDict(env_prefix="FORGE_", extra="ignore")

    max_steps: int = 10_000_000
    max_bits: int = 4_000_000
    max_monomials: int = 2_000_000
    search_bound: int = 1_000
    workers: int = 1
    numeral_digit_limit: int = 2_000
    allow_huge: bool = False
    log_level: str = "WARNING"


@lru_cache(maxsize=1)
def get_settings(env_file: Optional[str] = None) -> ForgeSettings:
    """加载配置（带缓存）"""
    load_dotenv(env_file)
    return ForgeSettings()


@dataclass(frozen=True)
class Budget:
    """
    资源预算

    - max_steps: 模拟燃料
    - max_bits: 见证分量的最大比特长度
    - max_monomials: 多项式物化的最大单项式个数
    - search_bound: 有界搜索的默认上界
    """

    max_steps: int = 10_000_000
    max_bits: int = 4_000_000
    max_monomials: int = 2_000_000
    search_bound: int = 1_000

    @classmethod
    def from_settings(cls, settings: Optional[ForgeSettings] = None) -> "Budget":
        settings = settings or get_settings()
        return cls(
            max_steps=settings.max_steps,
            max_bits=settings.max_bits,
            max_monomials=settings.max_monomials,
            search_bound=settings.search_bound,
        )

    def scaled(self, factor: int) -> "Budget":
        """按倍数放大所有上限（CLI --budget）"""
        if factor < 1:
            raise ValueError(f"budget factor must be positive, got {factor}")
        return replace(
            self,
            max_steps=self.max_steps * factor,
            max_bits=self.max_bits * factor,
            max_monomials=self.max_monomials * factor,
            search_bound=self.search_bound * factor,
        )

    def check_bits(self, value: int, what: str = "witness bits") -> int:
        bits = abs(value).bit_length()
        if bits > self.max_bits:
            raise BudgetExceeded(what, self.max_bits, bits)
        return value

    def check_bit_estimate(self, bits: int, what: str = "witness bits") -> None:
        """在真正计算之前按估计值拒绝"""
        if bits > self.max_bits:
            raise BudgetExceeded(what, self.max_bits, bits)

    def check_monomials(self, count: int, what: str = "monomials") -> None:
        if count > self.max_monomials:
            raise BudgetExceeded(what, self.max_monomials, count)


DEFAULT_BUDGET = Budget()


def setup_logging(level: Optional[str] = None) -> None:
    """配置根日志处理器（仅 CLI 调用）"""
    level_name = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
