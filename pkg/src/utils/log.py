import logging
import os
import sys
import uuid
from datetime import datetime
from typing import Dict, Any, Optional

LOGGER_NAME = 'SumProductLogger'
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

# Module-level variables
_logger: Optional[logging.Logger] = None
_log_file: Optional[str] = None
_configured = False

def _generate_log_filename() -> str:
    """Generate a timestamped log filename with random ID."""
    now = datetime.now()
    date_str = now.strftime("%d%m%Y")
    time_str = now.strftime("%H%M")
    random_id = str(uuid.uuid4())[:8]

    return f"logs/log_{date_str}_{time_str}_{random_id}.log"

def _install_handlers(log_file: Optional[str], log_level: int, mode: str):
    global _logger, _log_file, _configured

    _logger = logging.getLogger(LOGGER_NAME)
    for handler in _logger.handlers[:]:
        _logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)
    # stdout carries report streams, so the console handler writes to stderr
    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(formatter)
    _logger.addHandler(console)

    _log_file = log_file
    if log_file:
        os.makedirs(os.path.dirname(log_file) if os.path.dirname(log_file) else '.', exist_ok=True)
        file_handler = logging.FileHandler(log_file, mode=mode, encoding='utf-8')
        file_handler.setFormatter(formatter)
        _logger.addHandler(file_handler)

    _logger.setLevel(log_level)
    _logger.propagate = False
    _configured = True

def setup_logging(log_file: Optional[str] = None, log_level: int = logging.WARNING, to_file: bool = False):
    """Initialize the logging system - call once at startup. Files are only written when asked for."""
    if to_file and log_file is None:
        log_file = _generate_log_filename()
    _install_handlers(log_file, log_level, mode='a')

    _logger.info("=" * 60)
    _logger.info("NEW VERIFICATION SESSION STARTED")
    _logger.info("=" * 60)

def create_new_log_file(log_file: Optional[str] = None, log_level: int = logging.INFO) -> str:
    """Create a new log file - closes current handlers and starts fresh."""
    if log_file is None:
        log_file = _generate_log_filename()
    _install_handlers(log_file, log_level, mode='w')

    _logger.info("=" * 60)
    _logger.info("NEW VERIFICATION SESSION STARTED")
    _logger.info("=" * 60)

    return log_file

def get_logger() -> logging.Logger:
    """Get the logger instance."""
    if not _configured:
        setup_logging()
    return _logger

def get_current_log_file() -> Optional[str]:
    """Get the current log file path."""
    return _log_file

def _format_details(details: Dict[str, Any]) -> str:
    """Format details dictionary into a readable string."""
    formatted_parts = []

    for key, value in details.items():
        if key == "elapsed":
            formatted_parts.append(f"Elapsed: {value:.2f}s")
        elif key == "error":
            formatted_parts.append(f"Error: {value}")
        elif key == "family" and isinstance(value, dict):
            formatted_parts.append(f"Family: {value.get('generator')} seed={value.get('seed')}")
        elif key == "details" and isinstance(value, dict):
            nested = _format_details(value)
            if nested:
                formatted_parts.append(f"Details: ({nested})")
        else:
            formatted_parts.append(f"{key}: {value}")

    return " | ".join(formatted_parts)

def _emit(level: int, base_msg: str, details: Optional[Dict[str, Any]]):
    if not _configured:
        setup_logging()
    if details:
        base_msg = f"{base_msg} | {_format_details(details)}"
    _logger.log(level, base_msg)

def log_check_event(check_id: str, index: int, event: str, details: Dict[str, Any] = None,
                    level: int = logging.INFO):
    """Log one event of one check instance."""
    _emit(level, f"[Item {index:03d}] CHECK {check_id} - {event.upper()}", details)

def log_sweep_event(index: int, event: str, details: Dict[str, Any] = None, level: int = logging.INFO):
    """Log sweep-level events."""
    _emit(level, f"[Item {index:03d}] SWEEP - {event.upper()}", details)

def log_session_end():
    """Log the end of a verification session."""
    if not _configured:
        setup_logging()

    _logger.info("=" * 60)
    _logger.info("VERIFICATION SESSION ENDED")
    _logger.info("=" * 60)

def level_from_name(name: str) -> int:
    level = logging.getLevelName(str(name).upper())
    return level if isinstance(level, int) else logging.WARNING

def set_log_level(level: int):
    """Change the logging level."""
    if _logger:
        _logger.setLevel(level)

def enable_logging():
    """Enable logging."""
    if _logger:
        _logger.disabled = False

def disable_logging():
    """Disable logging."""
    if _logger:
        _logger.disabled = True
