"""
Command-line front end: JSON documents, reports and command handlers
"""

from .schemas import (
    StateDocument,
    ChannelDocument,
    state_to_document,
    state_from_document,
    channel_to_document,
    channel_from_document,
    load_channel,
    load_state,
    dump_document,
    write_document,
    round_float,
)
from .reports import AnalysisReport, OracleReport, render_analysis, render_oracle
from .commands import CommandHandler, CommandResult, ExitCode

__all__ = [
    'StateDocument', 'ChannelDocument', 'state_to_document', 'state_from_document',
    'channel_to_document', 'channel_from_document', 'load_channel', 'load_state',
    'dump_document', 'write_document', 'round_float',
    'AnalysisReport', 'OracleReport', 'render_analysis', 'render_oracle',
    'CommandHandler', 'CommandResult', 'ExitCode',
]
