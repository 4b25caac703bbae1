"""
Report models and their human-readable rendering

Reports are self-certifying: every asserted identity is printed with its residual.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from gaussian_states import PurityReport
from .schemas import ChannelDocument, StateDocument, round_float, to_list

PURITY_CONDITIONS = {
    1: "alpha is minimal",
    2: "symplectic eigenvalues all 1/2",
    3: "rank(alpha - (i/2) Delta) = s",
    4: "alpha + Delta alpha^-1 Delta / 4 = 0",
    5: "J = 2 Delta alpha satisfies J^2 = -I",
}


class PuritySection(BaseModel):
    verdicts: Dict[str, bool]
    consensus: bool
    symplectic_eigenvalues: List[float]
    residuals: Dict[str, float]
    notes: Dict[str, str] = Field(default_factory=dict)


class EnvironmentSection(BaseModel):
    K_D: List[List[float]]
    alpha_D: List[List[float]]
    l_D: List[float]
    symplectic_eigenvalues: List[float]
    residuals: Dict[str, float]


class ExtremalitySection(BaseModel):
    verdict: str
    reason: str
    purity: Optional[PuritySection] = None


class DilationSection(BaseModel):
    L: List[List[float]]
    L_D: List[List[float]]
    T: List[List[float]]
    residuals: Dict[str, float]


class DualSection(BaseModel):
    channel: ChannelDocument
    scale: float
    residuals: Dict[str, float]


class ComplementSection(BaseModel):
    channel: ChannelDocument
    cp: bool
    env_pure: bool
    residuals: Dict[str, float]


class AnalysisReport(BaseModel):
    command: str
    input: ChannelDocument
    cp: Optional[bool] = None
    cp_min_eigenvalue: Optional[float] = None
    delta_K: Optional[List[List[float]]] = None
    nondegenerate: Optional[bool] = None
    smallest_singular_value: Optional[float] = None
    env: Optional[EnvironmentSection] = None
    extremality: Optional[ExtremalitySection] = None
    dilation: Optional[DilationSection] = None
    complement: Optional[ComplementSection] = None
    dual: Optional[DualSection] = None
    input_state: Optional[StateDocument] = None
    output_state: Optional[StateDocument] = None
    warnings: List[str] = Field(default_factory=list)
    error: Optional[str] = None
    exit_code: int = 0


class OracleReport(BaseModel):
    command: str = "verify-fock"
    input: ChannelDocument
    n_max: int
    grid_extent: float
    grid_step: float
    apply_residuals: Dict[str, float] = Field(default_factory=dict)
    duality_errors: Dict[str, float] = Field(default_factory=dict)
    sampling_min_eigenvalue: Optional[float] = None
    sampling_attempt: Optional[int] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    passed: bool = False
    warnings: List[str] = Field(default_factory=list)
    error: Optional[str] = None
    exit_code: int = 0


def rounded(values: Dict[str, float]) -> Dict[str, float]:
    return {key: round_float(v) for key, v in values.items()}


def purity_section(report: PurityReport) -> PuritySection:
    return PuritySection(
        verdicts={str(k): bool(v) for k, v in report.verdicts.items()},
        consensus=report.consensus,
        symplectic_eigenvalues=to_list(report.symplectic_eigenvalues),
        residuals=rounded(report.residuals),
        notes={str(k): v for k, v in report.notes.items()},
    )


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def _matrix_lines(name: str, rows: List[List[float]]) -> List[str]:
    lines = [f"  {name} ="]
    for row in rows:
        lines.append("    [" + "  ".join(f"{v: .6f}" for v in row) + "]")
    return lines


def render_analysis(report: AnalysisReport) -> str:
    lines = [f"== {report.command}: s_A={report.input.s_A} s_B={report.input.s_B} =="]
    if report.error:
        lines.append(f"error: {report.error}")
    if report.cp is not None:
        lines.append(
            f"complete positivity: {'yes' if report.cp else 'no'} "
            f"(min eigenvalue of mu - (i/2) Delta_K = {_fmt(report.cp_min_eigenvalue)})"
        )
    if report.nondegenerate is not None:
        lines.append(
            f"Delta_K nondegenerate: {'yes' if report.nondegenerate else 'no'} "
            f"(smallest singular value {_fmt(report.smallest_singular_value)})"
        )
        lines.extend(_matrix_lines("Delta_K", report.delta_K))
    if report.env is not None:
        lines.append("environment:")
        lines.extend(_matrix_lines("K_D", report.env.K_D))
        lines.extend(_matrix_lines("alpha_D", report.env.alpha_D))
        lines.append(f"  l_D = {report.env.l_D}")
        lines.append(f"  symplectic eigenvalues of alpha_D = {report.env.symplectic_eigenvalues}")
        for name, value in report.env.residuals.items():
            lines.append(f"  residual[{name}] = {_fmt(value)}")
    if report.extremality is not None:
        lines.append(f"extremality: {report.extremality.verdict} ({report.extremality.reason})")
        purity = report.extremality.purity
        if purity is not None:
            for key, verdict in purity.verdicts.items():
                note = f" [{purity.notes[key]}]" if key in purity.notes else ""
                lines.append(f"  ({key}) {PURITY_CONDITIONS[int(key)]}: {verdict}{note}")
            lines.append(f"  consensus: {purity.consensus}")
            for name, value in purity.residuals.items():
                lines.append(f"  residual[{name}] = {_fmt(value)}")
    if report.dilation is not None:
        lines.append("dilation:")
        lines.extend(_matrix_lines("L", report.dilation.L))
        lines.extend(_matrix_lines("L_D", report.dilation.L_D))
        lines.extend(_matrix_lines("T", report.dilation.T))
        for name, value in report.dilation.residuals.items():
            lines.append(f"  residual[{name}] = {_fmt(value)}")
    if report.complement is not None:
        lines.append(f"complementary channel (cp: {report.complement.cp}, pure environment: {report.complement.env_pure}):")
        lines.extend(_matrix_lines("K", report.complement.channel.K))
        lines.append(f"  l = {report.complement.channel.l}")
        lines.extend(_matrix_lines("mu", report.complement.channel.mu))
        for name, value in report.complement.residuals.items():
            lines.append(f"  residual[{name}] = {_fmt(value)}")
    if report.dual is not None:
        lines.append(f"dual channel (scale |det K|^-1 = {report.dual.scale}):")
        lines.extend(_matrix_lines("K", report.dual.channel.K))
        lines.append(f"  l = {report.dual.channel.l}")
        lines.extend(_matrix_lines("mu", report.dual.channel.mu))
        for name, value in report.dual.residuals.items():
            lines.append(f"  residual[{name}] = {_fmt(value)}")
    if report.output_state is not None:
        lines.append("output state:")
        lines.append(f"  l = {report.output_state.l}")
        lines.extend(_matrix_lines("alpha", report.output_state.alpha))
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    lines.append(f"exit code: {report.exit_code}")
    return "\n".join(lines)


def render_oracle(report: OracleReport) -> str:
    lines = [
        f"== verify-fock: n_max={report.n_max} grid extent={report.grid_extent} step={report.grid_step} ==",
    ]
    if report.error:
        lines.append(f"error: {report.error}")
    for name, value in report.apply_residuals.items():
        lines.append(f"apply[{name}]: residual {_fmt(value)} (tol {report.tolerances.get('apply_tol')})")
    for name, value in report.duality_errors.items():
        lines.append(f"duality[{name}]: max error {_fmt(value)} (tol {report.tolerances.get('duality_tol')})")
    if report.sampling_min_eigenvalue is not None:
        lines.append(
            f"noise kernel sampling: min eigenvalue {_fmt(report.sampling_min_eigenvalue)} "
            f"at attempt {report.sampling_attempt} (tol {report.tolerances.get('sampling_tol')})"
        )
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    lines.append(f"passed: {report.passed}")
    lines.append(f"exit code: {report.exit_code}")
    return "\n".join(lines)
