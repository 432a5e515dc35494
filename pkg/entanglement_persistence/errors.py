"""异常定义

所有领域异常都继承自 PersistenceError，并按 CLI 退出码分为三类：
输入错误 (2)、前置条件错误 (3)、数值错误 (4)。
"""

from __future__ import annotations


class PersistenceError(Exception):
    """所有领域异常的基类"""

    exit_code: int = 1


class InputError(PersistenceError, ValueError):
    """输入文档或参数无法解析"""

    exit_code = 2


class PreconditionError(PersistenceError, ValueError):
    """输入合法，但不满足操作的前置条件"""

    exit_code = 3


class NumericalError(PersistenceError, RuntimeError):
    """数值计算失败"""

    exit_code = 4


class ParseError(InputError):
    """状态描述文档不符合格式

    Attributes:
        path: 出错字段的 JSON 路径，例如 ``$.factors[1].n``
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ZeroState(InputError):
    """振幅向量为零，无法归一化"""


class DimensionMismatch(InputError):
    """矩阵或局部维度不匹配"""


class InvalidParameter(InputError):
    """构造参数超出允许范围（例如 n < 2、t ≤ 0）"""


class InvalidGraph(InputError):
    """邻接关系不是 n 个顶点上的简单无向图"""


class EmptySubset(PreconditionError):
    """子集为空"""


class InvalidSubset(PreconditionError):
    """子集越界、为空或等于全集（在要求真子集时）"""


class PartyCountMismatch(PreconditionError):
    """子系统个数不符合操作要求"""


class NotHermitian(PreconditionError):
    """矩阵不是厄米矩阵"""


class InvalidDensityMatrix(PreconditionError):
    """迹不为 1 或存在超出截断容差的负特征值"""


class NotQubitState(PreconditionError):
    """要求所有子系统都是量子比特"""


class TooLarge(PreconditionError):
    """规模超出计算保护上限"""


class InfiniteBar(PreconditionError):
    """条形码中存在无限长区间"""


class MonotonicityViolation(PreconditionError):
    """泛函在包含关系下不单调

    Attributes:
        face: 较小子集的位掩码
        coface: 较大子集的位掩码
        face_value: F(face)
        coface_value: F(coface)
    """

    def __init__(self, face: int, coface: int, face_value: float, coface_value: float):
        self.face = face
        self.coface = coface
        self.face_value = face_value
        self.coface_value = coface_value
        super().__init__(
            f"F({face:#b}) = {face_value!r} > F({coface:#b}) = {coface_value!r}"
        )


class EigFailed(NumericalError):
    """特征值求解未收敛"""
