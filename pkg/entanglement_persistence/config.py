"""配置管理模块

从 config.json 加载配置，缺失的键使用默认值。
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from entanglement_persistence.linalg.ops import EIG_METHODS as EIG_SOLVERS
from entanglement_persistence.linalg.ops import EigenSolver

MODES = ("absolute", "reduced", "relative")


@dataclass
class NumericsConfig:
    """数值计算配置

    Attributes:
        eig_solver: 特征值求解器，"lapack" 或 "jacobi"
        hermitian_tol: 厄米性检查容差
        clamp_tol: 负特征值截断容差，[-clamp_tol, 0) 视为 0
        monotone_tol: 单调性检查容差
        jacobi_tol: Jacobi 收敛阈值（相对非对角 Frobenius 范数）
        jacobi_max_sweeps: Jacobi 最大扫描次数
    """
    eig_solver: str = "lapack"
    hermitian_tol: float = 1e-10
    clamp_tol: float = 1e-10
    monotone_tol: float = 1e-9
    jacobi_tol: float = 1e-12
    jacobi_max_sweeps: int = 100

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NumericsConfig":
        solver = data.get("eig_solver", "lapack")
        if solver not in EIG_SOLVERS:
            raise ValueError(f"未知的特征值求解器: {solver!r}")
        return cls(
            eig_solver=solver,
            hermitian_tol=float(data.get("hermitian_tol", 1e-10)),
            clamp_tol=float(data.get("clamp_tol", 1e-10)),
            monotone_tol=float(data.get("monotone_tol", 1e-9)),
            jacobi_tol=float(data.get("jacobi_tol", 1e-12)),
            jacobi_max_sweeps=int(data.get("jacobi_max_sweeps", 100)),
        )

    def solver(self) -> EigenSolver:
        """按本配置创建特征值求解设置"""
        return EigenSolver(
            method=self.eig_solver,
            hermitian_tol=self.hermitian_tol,
            clamp_tol=self.clamp_tol,
            jacobi_tol=self.jacobi_tol,
            jacobi_max_sweeps=self.jacobi_max_sweeps,
        )


@dataclass
class PipelineConfig:
    """流水线默认参数"""
    q: float = 2.0
    mode: str = "reduced"
    rescale: float = 1.0
    max_parties: int = 10

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PipelineConfig":
        mode = data.get("mode", "reduced")
        if mode not in MODES:
            raise ValueError(f"未知的过滤模式: {mode!r}")
        return cls(
            q=float(data.get("q", 2.0)),
            mode=mode,
            rescale=float(data.get("rescale", 1.0)),
            max_parties=int(data.get("max_parties", 10)),
        )


@dataclass
class VerifyConfig:
    """恒等式验证套件配置"""
    trials: int = 50
    seed: int = 7
    tolerance: float = 1e-8
    workers: int = 4
    parallel: bool = True

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerifyConfig":
        return cls(
            trials=int(data.get("trials", 50)),
            seed=int(data.get("seed", 7)),
            tolerance=float(data.get("tolerance", 1e-8)),
            workers=int(data.get("workers", 4)),
            parallel=bool(data.get("parallel", True)),
        )


@dataclass
class OutputConfig:
    """输出格式配置"""
    significant_digits: int = 17
    svg_width: int = 800
    svg_row_height: int = 20
    svg_margin: int = 80

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OutputConfig":
        return cls(
            significant_digits=int(data.get("significant_digits", 17)),
            svg_width=int(data.get("svg_width", 800)),
            svg_row_height=int(data.get("svg_row_height", 20)),
            svg_margin=int(data.get("svg_margin", 80)),
        )


@dataclass
class LoggingConfig:
    """日志配置"""
    level: str = "WARNING"
    format: str = "%(levelname)s %(name)s: %(message)s"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LoggingConfig":
        return cls(
            level=str(data.get("level", "WARNING")).upper(),
            format=data.get("format", "%(levelname)s %(name)s: %(message)s"),
        )

    def apply(self, verbosity: int = 0) -> None:
        """配置根日志处理器

        Args:
            verbosity: 额外的详细级别，每级降低一档日志级别
        """
        level = logging.getLevelName(self.level)
        if not isinstance(level, int):
            level = logging.WARNING
        level = max(logging.DEBUG, level - 10 * verbosity)
        logging.basicConfig(level=level, format=self.format, force=True)


@dataclass
class Config:
    """主配置类

    从 config.json 加载配置。

    Example:
        >>> config = Config.load("config.json")
        >>> print(config.numerics.eig_solver)
        >>> print(config.pipeline.q)
    """
    numerics: NumericsConfig
    pipeline: PipelineConfig
    verify: VerifyConfig
    output: OutputConfig
    logging: LoggingConfig
    _config_path: Path | None = field(default=None, repr=False)

    @classmethod
    def load(cls, config_path: str | Path | None = None) -> "Config":
        """从配置文件加载配置

        Args:
            config_path: 配置文件路径，如果为 None 则使用默认配置

        Returns:
            Config 实例
        """
        if config_path is None:
            return cls.default()

        path = Path(config_path)
        if not path.exists():
            # 配置文件不存在，使用默认配置
            return cls.default()

        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)

        return cls(
            numerics=NumericsConfig.from_dict(data.get("numerics", {})),
            pipeline=PipelineConfig.from_dict(data.get("pipeline", {})),
            verify=VerifyConfig.from_dict(data.get("verify", {})),
            output=OutputConfig.from_dict(data.get("output", {})),
            logging=LoggingConfig.from_dict(data.get("logging", {})),
            _config_path=path,
        )

    @classmethod
    def default(cls) -> "Config":
        """创建默认配置"""
        return cls(
            numerics=NumericsConfig(),
            pipeline=PipelineConfig(),
            verify=VerifyConfig(),
            output=OutputConfig(),
            logging=LoggingConfig(),
        )

    def to_dict(self) -> dict[str, Any]:
        """转换为字典（与 config.json 布局一致）"""
        return {
            "numerics": {
                "eig_solver": self.numerics.eig_solver,
                "hermitian_tol": self.numerics.hermitian_tol,
                "clamp_tol": self.numerics.clamp_tol,
                "monotone_tol": self.numerics.monotone_tol,
                "jacobi_tol": self.numerics.jacobi_tol,
                "jacobi_max_sweeps": self.numerics.jacobi_max_sweeps,
            },
            "pipeline": {
                "q": self.pipeline.q,
                "mode": self.pipeline.mode,
                "rescale": self.pipeline.rescale,
                "max_parties": self.pipeline.max_parties,
            },
            "verify": {
                "trials": self.verify.trials,
                "seed": self.verify.seed,
                "tolerance": self.verify.tolerance,
                "workers": self.verify.workers,
                "parallel": self.verify.parallel,
            },
            "output": {
                "significant_digits": self.output.significant_digits,
                "svg_width": self.output.svg_width,
                "svg_row_height": self.output.svg_row_height,
                "svg_margin": self.output.svg_margin,
            },
            "logging": {
                "level": self.logging.level,
                "format": self.logging.format,
            },
        }

    def save(self, config_path: str | Path | None = None) -> None:
        """保存配置到文件

        Args:
            config_path: 配置文件路径，如果为 None 则使用加载时的路径
        """
        path = Path(config_path) if config_path else self._config_path
        if path is None:
            raise ValueError("未指定配置文件路径")

        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)
