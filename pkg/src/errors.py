"""
错误定义模块

所有业务错误都携带机器可读的错误码与 CLI 退出码：
2 = 输入错误，3 = 超出预算，4 = 证书被拒绝
"""
from typing import Optional


class LatticeToolError(Exception):
    """业务错误基类"""

    code: str = "Error"
    exit_code: int = 1

    def __init__(self, message: str = "", *, code: Optional[str] = None):
        super().__init__(message or self.code)
        if code is not None:
            self.code = code

    @property
    def detail(self) -> str:
        return str(self)


class InputError(LatticeToolError, ValueError):
    """输入无效或前置条件不满足"""

    code = "InputError"
    exit_code = 2


class BudgetExceeded(LatticeToolError, RuntimeError):
    """超出配置的计算预算"""

    code = "BudgetExceeded"
    exit_code = 3


class CertificateRejected(LatticeToolError):
    """着色证书未通过校验"""

    code = "CertificateRejected"
    exit_code = 4


# lattice-core
class RankDeficient(InputError):
    code = "RankDeficient"


class NotRational(InputError):
    code = "NotRational"


class UnknownName(InputError):
    code = "UnknownName"


class BadDimension(InputError):
    code = "BadDimension"


class DimensionMismatch(InputError):
    code = "DimensionMismatch"


class SingularSublattice(InputError):
    code = "SingularSublattice"


# relevant-vectors / graph-engine
class DimensionCapExceeded(BudgetExceeded):
    code = "DimensionCapExceeded"


class TooManyVertices(BudgetExceeded):
    code = "TooManyVertices"


class LoopInQuotient(InputError):
    code = "LoopInQuotient"


# bounds
class ImproperInput(InputError):
    code = "ImproperInput"


class InapplicableDimension(InputError):
    code = "InapplicableDimension"


class RhoHypothesisFails(InputError):
    code = "RhoHypothesisFails"


# first-kind
class SumNotZero(InputError):
    code = "SumNotZero"


class NotABasis(InputError):
    code = "NotABasis"


class PositiveInnerProduct(InputError):
    code = "PositiveInnerProduct"

    def __init__(self, i: int, j: int, value):
        super().__init__(f"Selling parameter v{i}·v{j} = {value} is positive")
        self.i = i
        self.j = j
        self.value = value


class DisconnectedInput(InputError):
    code = "DisconnectedInput"


class NoCycle(InputError):
    code = "NoCycle"
