"""
Command handlers for the analysis CLI
Each handler returns a CommandResult carrying a report model and the exit code
"""

import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel

from errors import (
    DegenerateNoiseError,
    DimensionMismatchError,
    DocumentError,
    DualityUndefinedError,
    GaussianAnalysisError,
    InvalidParameterError,
    InvalidStateError,
    NotCompletelyPositiveError,
    NotSymmetricError,
    OracleInputError,
)
from fock_lab import disk_samples, reference_state, search_negativity, verify_apply, verify_duality
from gaussian_channels import (
    GaussianChannel,
    Verdict,
    apply,
    catalog,
    complementary,
    dilate,
    dual,
    environment_is_pure,
    environment_state,
    is_extreme,
    noise_form,
    validate_channel,
)
from gaussian_states import make_state, validate_state
from symplectic import form_matrix, max_residual, symplectic_eigenvalues
from .reports import (
    AnalysisReport,
    ComplementSection,
    DilationSection,
    DualSection,
    EnvironmentSection,
    ExtremalitySection,
    OracleReport,
    purity_section,
    render_analysis,
    render_oracle,
    rounded,
)
from .schemas import (
    channel_to_document,
    dump_document,
    load_channel,
    load_state,
    round_float,
    state_to_document,
    to_list,
    write_document,
)

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit codes"""
    OK = 0
    EXTREME = 0
    NOT_EXTREME = 1
    FAILED = 1
    NOT_CP = 2
    INDETERMINATE = 3
    INPUT_ERROR = 64


INPUT_ERRORS = (
    DocumentError,
    DimensionMismatchError,
    InvalidParameterError,
    InvalidStateError,
    NotSymmetricError,
    OracleInputError,
)

CATALOG_PARAMETERS = {
    'attenuator': ('eta', 'nbar'),
    'amplifier': ('g', 'nbar'),
    'classical_noise': ('nu',),
}

ORACLE_INPUTS = (
    ('vacuum', 'vacuum', {}),
    ('thermal(1)', 'thermal', {'nbar': 1.0}),
    ('squeezed(0.4)', 'squeezed', {'r': 0.4}),
)

DUALITY_INPUTS = (
    ('vacuum', 'vacuum', {}),
    ('thermal(1)', 'thermal', {'nbar': 1.0}),
)


@dataclass
class CommandResult:
    """Outcome of one CLI command"""
    exit_code: int
    report: Optional[BaseModel] = None
    text: str = ""
    message: Optional[str] = None

    def render(self, as_json: bool) -> str:
        if self.report is None:
            return ""
        return dump_document(self.report) if as_json else self.text


class CommandHandler:
    """Runs analyses for the CLI with tolerances taken from configuration"""

    def __init__(self, config: Dict[str, Any]):
        self.config = config
        self.tol = float(config['numerics']['tol'])
        self.rank_tol = float(config['numerics']['rank_tol'])
        self.residual_tol = float(config['numerics']['residual_tol'])
        self.symmetry_tol = float(config['numerics']['symmetry_tol'])
        self.fock = config['fock']
        self.oracle = config['oracle']

    def _run(self, command: str, body: Callable[[], CommandResult]) -> CommandResult:
        try:
            return body()
        except INPUT_ERRORS as e:
            logger.error(f"[{command}] input error: {e}")
            return CommandResult(exit_code=ExitCode.INPUT_ERROR, message=str(e))
        except NotCompletelyPositiveError as e:
            logger.warning(f"[{command}] {e}")
            return CommandResult(exit_code=ExitCode.NOT_CP, message=str(e))
        except DegenerateNoiseError as e:
            logger.warning(f"[{command}] {e}")
            return CommandResult(exit_code=ExitCode.INDETERMINATE, message=str(e))
        except GaussianAnalysisError as e:
            logger.error(f"[{command}] analysis failed: {e}")
            return CommandResult(exit_code=ExitCode.FAILED, message=str(e))

    def _load(self, channel_file: str) -> GaussianChannel:
        return load_channel(channel_file, self.symmetry_tol)

    def _validity(self, report: AnalysisReport, ch: GaussianChannel):
        """Fill the cp and Delta_K fields; returns the validity verdict"""
        validity = validate_channel(ch, self.tol)
        form = noise_form(ch, self.tol)
        report.cp = validity.cp
        report.cp_min_eigenvalue = round_float(validity.min_eigenvalue)
        report.delta_K = to_list(form.delta_K)
        report.nondegenerate = form.nondegenerate
        report.smallest_singular_value = round_float(form.smallest_singular_value)
        return validity

    def _environment(self, report: AnalysisReport, ch: GaussianChannel) -> None:
        env = environment_state(ch, self.tol)
        balance = form_matrix(2 * ch.s_B) - ch.K.T @ form_matrix(2 * ch.s_A) @ ch.K \
            - env.K_D.T @ form_matrix(2 * ch.s_B) @ env.K_D
        report.env = EnvironmentSection(
            K_D=to_list(env.K_D),
            alpha_D=to_list(env.state.alpha),
            l_D=to_list(env.state.l),
            symplectic_eigenvalues=to_list(symplectic_eigenvalues(env.state.alpha, self.tol)),
            residuals=rounded({
                'environment_form': env.residual,
                'commutator_balance': float(np.max(np.abs(balance))),
            }),
        )

    def _finish(self, report: AnalysisReport, exit_code: int) -> CommandResult:
        report.exit_code = int(exit_code)
        logger.info(f"[{report.command}] exit code {int(exit_code)}")
        return CommandResult(exit_code=exit_code, report=report, text=render_analysis(report))

    def _gate(self, report: AnalysisReport, ch: GaussianChannel) -> Optional[CommandResult]:
        """Stop early for non-cp or degenerate channels"""
        validity = self._validity(report, ch)
        if not validity.cp:
            report.error = "channel is not completely positive"
            return self._finish(report, ExitCode.NOT_CP)
        if not validity.nondegenerate:
            report.error = (
                "indeterminate: Delta_K is degenerate; environment construction requires det Delta_K != 0"
            )
            return self._finish(report, ExitCode.INDETERMINATE)
        return None

    def cmd_check(self, channel_file: str) -> CommandResult:
        """Complete positivity, environment state and extremality verdict"""
        def body() -> CommandResult:
            ch = self._load(channel_file)
            report = AnalysisReport(command='check', input=channel_to_document(ch))
            validity = self._validity(report, ch)
            if not validity.cp:
                return self._finish(report, ExitCode.NOT_CP)
            result = is_extreme(ch, self.tol, self.rank_tol)
            report.extremality = ExtremalitySection(
                verdict=result.verdict.value,
                reason=result.reason,
                purity=purity_section(result.evidence) if result.evidence is not None else None,
            )
            if result.evidence is None:
                report.warnings.append(result.reason)
                return self._finish(report, ExitCode.INDETERMINATE)
            self._environment(report, ch)
            if not result.evidence.consensus:
                report.warnings.append("purity conditions disagree")
            code = ExitCode.EXTREME if result.verdict is Verdict.EXTREME else ExitCode.NOT_EXTREME
            return self._finish(report, code)

        return self._run('check', body)

    def cmd_dilate(self, channel_file: str) -> CommandResult:
        """K_D, L, L_D and T with every identity residual"""
        def body() -> CommandResult:
            ch = self._load(channel_file)
            report = AnalysisReport(command='dilate', input=channel_to_document(ch))
            stopped = self._gate(report, ch)
            if stopped is not None:
                return stopped
            self._environment(report, ch)
            dilation = dilate(ch, self.tol, self.residual_tol)
            report.dilation = DilationSection(
                L=to_list(dilation.L),
                L_D=to_list(dilation.L_D),
                T=to_list(dilation.T),
                residuals=rounded(dilation.residuals),
            )
            return self._finish(report, ExitCode.OK)

        return self._run('dilate', body)

    def cmd_complement(self, channel_file: str) -> CommandResult:
        def body() -> CommandResult:
            ch = self._load(channel_file)
            report = AnalysisReport(command='complement', input=channel_to_document(ch))
            stopped = self._gate(report, ch)
            if stopped is not None:
                return stopped
            complement = complementary(ch, self.tol)
            validity = validate_channel(complement, self.tol)
            report.complement = ComplementSection(
                channel=channel_to_document(complement),
                cp=validity.cp,
                env_pure=environment_is_pure(ch, self.tol, self.rank_tol),
                residuals=rounded({'cp_min_eigenvalue': validity.min_eigenvalue}),
            )
            if not validity.cp:
                report.warnings.append("complementary channel failed the complete positivity check")
                return self._finish(report, ExitCode.FAILED)
            return self._finish(report, ExitCode.OK)

        return self._run('complement', body)

    def cmd_dual(self, channel_file: str) -> CommandResult:
        def body() -> CommandResult:
            ch = self._load(channel_file)
            report = AnalysisReport(command='dual', input=channel_to_document(ch))
            try:
                result = dual(ch, self.tol)
            except DualityUndefinedError as e:
                report.error = str(e)
                return self._finish(report, ExitCode.FAILED)
            twice = dual(result.channel, self.tol)
            report.dual = DualSection(
                channel=channel_to_document(result.channel),
                scale=round_float(result.scale),
                residuals=rounded({
                    'involution_K': max_residual(twice.channel.K, ch.K),
                    'involution_l': max_residual(twice.channel.l, ch.l),
                    'involution_mu': max_residual(twice.channel.mu, ch.mu),
                    'scale_product': abs(result.scale * twice.scale - 1.0),
                }),
            )
            return self._finish(report, ExitCode.OK)

        return self._run('dual', body)

    def cmd_apply(self, channel_file: str, state_file: str, output: Optional[str] = None) -> CommandResult:
        def body() -> CommandResult:
            ch = self._load(channel_file)
            state = load_state(state_file, self.symmetry_tol)
            if not validate_state(state.l, state.alpha, self.tol):
                raise InvalidStateError(f"{state_file}: covariance violates alpha >= (i/2) Delta")
            report = AnalysisReport(command='apply', input=channel_to_document(ch))
            self._validity(report, ch)
            if not report.cp:
                report.warnings.append("channel is not completely positive; output validity is not guaranteed")
            out = apply(ch, state, self.tol)
            report.input_state = state_to_document(state)
            report.output_state = state_to_document(out)
            if output:
                write_document(report.output_state, output)
            return self._finish(report, ExitCode.OK)

        return self._run('apply', body)

    def cmd_catalog(self, kind: str, params: List[float]) -> CommandResult:
        """Emit a standard channel as a JSON document"""
        def body() -> CommandResult:
            names = CATALOG_PARAMETERS.get(kind)
            if names is None:
                raise InvalidParameterError(f"unknown channel kind: {kind!r}")
            if not 1 <= len(params) <= len(names):
                raise InvalidParameterError(f"{kind} takes parameters {', '.join(names)}; got {len(params)} values")
            ch = catalog(kind, **dict(zip(names, params)))
            doc = channel_to_document(ch)
            return CommandResult(exit_code=ExitCode.OK, report=doc, text=dump_document(doc))

        return self._run('catalog', body)

    def cmd_verify_fock(self, channel_file: str) -> CommandResult:
        """Fock-space oracle: channel action, duality and noise-kernel sampling"""
        def body() -> CommandResult:
            ch = self._load(channel_file)
            if ch.s_A != 1 or ch.s_B != 1:
                raise OracleInputError("oracle is one-mode only")
            n_max = int(self.fock['n_max'])
            extent = float(self.fock['grid_extent'])
            step = float(self.fock['grid_step'])
            grid_options = dict(
                chunk_size=int(self.fock['chunk_size']),
                min_extent=float(self.fock['min_extent']),
                max_step=float(self.fock['max_step']),
                tail_threshold=float(self.fock['tail_threshold']),
            )
            report = OracleReport(
                input=channel_to_document(ch),
                n_max=n_max,
                grid_extent=extent,
                grid_step=step,
                tolerances={
                    'apply_tol': float(self.oracle['apply_tol']),
                    'duality_tol': float(self.oracle['duality_tol']),
                    'sampling_tol': float(self.oracle['sampling_tol']),
                },
            )

            for label, kind, params in ORACLE_INPUTS:
                residual = verify_apply(
                    ch, reference_state(kind, n_max, **params), extent, step,
                    block_dim=int(self.fock['block_dim']),
                    input_state=make_state(kind, **params),
                    **grid_options,
                )
                report.apply_residuals[label] = round_float(residual)

            samples = disk_samples(
                int(self.oracle['duality_samples']), float(self.oracle['duality_radius']), int(self.oracle['seed'])
            )
            for label, kind, params in DUALITY_INPUTS:
                try:
                    error = verify_duality(
                        ch, reference_state(kind, n_max, **params), samples,
                        float(self.fock['duality_extent']), float(self.fock['duality_step']),
                        margin=float(self.fock['duality_margin']),
                        tail_mass=float(self.fock['duality_tail_mass']),
                        max_levels=int(self.fock['duality_max_levels']),
                        trace_tol=float(self.fock['duality_trace_tol']),
                        **grid_options,
                    )
                except DualityUndefinedError as e:
                    report.warnings.append(f"duality skipped: {e}")
                    break
                report.duality_errors[label] = round_float(error)

            worst, attempt = search_negativity(
                ch.noise_function,
                noise_form(ch, self.tol).delta_K,
                n_points=int(self.oracle['sampling_points']),
                attempts=int(self.oracle['sampling_attempts']),
                radius=float(self.oracle['sampling_radius']),
                seed=int(self.oracle['seed']),
            )
            report.sampling_min_eigenvalue = round_float(worst)
            report.sampling_attempt = attempt

            report.passed = (
                all(v <= report.tolerances['apply_tol'] for v in report.apply_residuals.values())
                and all(v <= report.tolerances['duality_tol'] for v in report.duality_errors.values())
                and worst >= -report.tolerances['sampling_tol']
            )
            if worst < -report.tolerances['sampling_tol']:
                report.warnings.append("noise kernel is not Delta_K-nonnegative definite: channel is not cp")
            report.exit_code = int(ExitCode.OK if report.passed else ExitCode.FAILED)
            logger.info(f"[verify-fock] passed={report.passed}")
            return CommandResult(exit_code=report.exit_code, report=report, text=render_oracle(report))

        return self._run('verify-fock', body)
