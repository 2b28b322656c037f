import logging
import os

LOG_LEVELS = {
    'error': logging.ERROR,
    'info': logging.INFO,
    'debug': logging.DEBUG,
}

GXW_LOG = os.getenv('GXW_LOG', 'error').lower()
STATE_GUARD = int(os.getenv('GXW_STATE_GUARD', str(1 << 20)))
INVARIANT_GUARD = int(os.getenv('GXW_INVARIANT_GUARD', '4096'))
ORACLE_GUARD = int(os.getenv('GXW_ORACLE_GUARD', '8'))
ORACLE_MAX_OMEGA = 8


def log_level(name: str = GXW_LOG) -> int:
    """Map a GXW_LOG value to a logging level, defaulting to ERROR."""
    return LOG_LEVELS.get(name.lower(), logging.ERROR)
