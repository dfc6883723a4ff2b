'''
Logging helpers shared by every FSEE module.

Records are rendered as single-line JSON objects with timing metadata so that
sweep progress can be grepped or parsed next to the numerical output. A log
message that is itself a JSON object (see `event`) is merged into the record.
'''

import json
import logging
import os
from typing import Any, List, Optional

DEFAULT_LOGGER_NAME = "FSEE"
DEFAULT_LOG_LEVEL_ENV = "FSEE_LOG_LEVEL"

LOG_LEVELS_MAP = {
    'NOTSET': 0,
    'DEBUG': 10,
    'INFO': 20,
    'WARNING': 30,
    'ERROR': 40,
    'CRITICAL': 50 }

# Add source location to the record at these levels
EXTRA_INFO_LOG_LEVELS = { 10, 40, 50 }


def event(name: str, /, **fields: Any) -> str:
    '''Build a structured log message: `L.info(event("sweep_row", L=16, S=2.3))`.'''
    payload = {'event': name}
    payload.update({k: _jsonable(v) for k, v in fields.items()})
    return json.dumps(payload)


def _jsonable(value: Any) -> Any:
    # numpy scalars and tuples of them show up in almost every event
    if hasattr(value, 'item') and callable(value.item):
        try:
            return value.item()
        except (TypeError, ValueError):
            pass
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


class CustomFilter(logging.Filter):
    '''Format log records as JSON with timing and contextual metadata.

    Adds formatted timestamps, time deltas between logs, and the source
    location for DEBUG, ERROR or CRITICAL records.
    '''
    def __init__(self, loglevel: str, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.loglevel = loglevel
        self.previous_delta_ms = self.first_delta_ms = None
        # Create once, not per record
        self.__time_format_func = logging.Formatter().formatTime

    def format_time(
        self,
        record: logging.LogRecord,
        datefmt: Optional[str] = '%Y-%m-%d %H:%M:%S' ) -> str:
        return self.__time_format_func(record, datefmt=datefmt)

    def filter(self, record: logging.LogRecord) -> bool:
        '''Inject metadata into the record and stash the rendered JSON body.'''
        if self.first_delta_ms is None:
            previous_delta_ms = record.relativeCreated
            self.first_delta_ms = record_delta_ms = previous_delta_ms
        else:
            previous_delta_ms = self.previous_delta_ms
            record_delta_ms = record.relativeCreated

        message = record.getMessage().strip()
        try:
            log_as_dict = json.loads(message)
            if not isinstance(log_as_dict, dict):
                log_as_dict = { 'message': message }
        except json.JSONDecodeError:
            log_as_dict = { 'message': message }

        log_as_dict.update({
            'level': record.levelname,
            'time': self.format_time(record),
            'ms_last':  f'{(float(record_delta_ms) - float(previous_delta_ms)):0.5}',
            'ms_start': f'{(float(record_delta_ms) - float(self.first_delta_ms)):0.5}' })

        if record.levelno in EXTRA_INFO_LOG_LEVELS:
            log_as_dict.update({
                'name': record.name,
                'filename': record.filename,
                'lineno': record.lineno,
                'funcName': record.funcName })

        record.reformatted_msg = json.dumps(log_as_dict, default=str)[1:-1]
        self.previous_delta_ms = record_delta_ms
        return True


class RetainHandler(logging.Handler):
    '''Capture formatted log records in memory.'''
    def __init__(self) -> None:
        super().__init__()
        self.records: List[str] = []

    def emit(self, record: logging.LogRecord) -> None:
        body = getattr(record, 'reformatted_msg', None)
        self.records.append('{' + body + '}' if body is not None else record.getMessage())

    def get_retained(self) -> List[str]:
        return self.records.copy()

    def clear_retained(self) -> None:
        self.records.clear()


def get_logger(
    logger_name: Optional[str] = DEFAULT_LOGGER_NAME,
    logfile: Optional[str] = None,
    loglevel: Optional[str] = None,
    retain_logs: Optional[bool] = False,
    force: Optional[bool] = False ) -> logging.Logger:
    '''Initialise a logger with the JSON filter and optional log retention.

    Child loggers (`FSEE.kernel`, ...) share the root `FSEE` handlers, so the
    first call configures output for the whole package. `force=True`
    reconfigures an already initialised logger, which is how the CLI applies
    `--log-level` and `--log-file`. When `retain_logs=True` the logger gains
    `get_retained()` and `clear_retained()`.
    '''
    L = logging.getLogger(logger_name)
    if not force and hasattr(L, 'initialised'):
        return L

    loglevel = (loglevel or os.getenv(DEFAULT_LOG_LEVEL_ENV) or 'INFO').upper()
    if loglevel not in LOG_LEVELS_MAP:
        loglevel = 'INFO'

    lh = logging.StreamHandler() if logfile is None else logging.FileHandler(logfile)
    lh.setLevel(loglevel)
    L.setLevel(LOG_LEVELS_MAP[loglevel])

    # The formatter reads "reformatted_msg", which CustomFilter.filter sets
    lh.setFormatter(logging.Formatter(fmt='{%(reformatted_msg)s}'))
    lh.addFilter(CustomFilter(loglevel))

    for handler in list(L.handlers):
        L.removeHandler(handler)
    L.addHandler(lh)
    L.propagate = False

    if retain_logs:
        retain_handler = RetainHandler()
        retain_handler.setLevel(loglevel)
        # Retained records need the JSON body too
        retain_handler.addFilter(CustomFilter(loglevel))
        L.addHandler(retain_handler)
        setattr(L, 'get_retained', retain_handler.get_retained)
        setattr(L, 'clear_retained', retain_handler.clear_retained)
    else:
        setattr(L, 'get_retained', lambda: [])
        setattr(L, 'clear_retained', lambda: None)

    setattr(L, 'initialised', True)
    return L
