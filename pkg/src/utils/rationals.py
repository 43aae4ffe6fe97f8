"""
精确有理数工具模块

负责 "p/q" 字符串与 Fraction 之间的转换，以及分母、整数性、精确开方上取整等辅助计算
"""
from fractions import Fraction
from math import isqrt, lcm
from typing import Any, Iterable, List, Sequence

RationalMatrix = List[List[Fraction]]


def parse_rational(value: Any) -> Fraction:
    """
    解析单个有理数

    Args:
        value: int、Fraction、"p/q" 字符串、十进制字符串或有限浮点数

    Returns:
        Fraction: 精确有理数

    Raises:
        ValueError: 无法解析时
    """
    if isinstance(value, bool):
        raise ValueError(f"Boolean is not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"Non-finite value is not rational: {value!r}")
        # 十进制表示更接近用户本意（0.1 而非其二进制近似）
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Cannot parse rational number from {value!r}") from e
    raise ValueError(f"Unsupported rational value type: {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """格式化为 "p/q"（整数时为 "p"）"""
    return str(Fraction(value))


def parse_matrix(rows: Iterable[Iterable[Any]]) -> RationalMatrix:
    """解析有理数矩阵"""
    return [[parse_rational(v) for v in row] for row in rows]


def common_denominator(values: Iterable[Fraction]) -> int:
    """所有分母的最小公倍数"""
    result = 1
    for v in values:
        result = lcm(result, Fraction(v).denominator)
    return result


def matrix_denominator(rows: Sequence[Sequence[Fraction]]) -> int:
    """矩阵所有元素分母的最小公倍数"""
    return common_denominator(v for row in rows for v in row)


def is_integral(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


def is_integral_vector(values: Iterable[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)


def to_int_vector(values: Iterable[Fraction]) -> List[int]:
    """
    转为整数向量

    Raises:
        ValueError: 存在非整数分量
    """
    result = []
    for v in values:
        f = Fraction(v)
        if f.denominator != 1:
            raise ValueError(f"Expected an integer, got {f}")
        result.append(f.numerator)
    return result


def ceil_sqrt(value: Fraction) -> int:
    """
    精确计算 ⌈√value⌉

    k² ≥ value 当且仅当 k² ≥ ⌈value⌉（k 为整数）
    """
    value = Fraction(value)
    if value <= 0:
        return 0
    c = -((-value.numerator) // value.denominator)
    return isqrt(c - 1) + 1
