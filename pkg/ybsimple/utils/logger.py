"""Custom logger for ybsimple with colored console output."""

import logging
import sys
from datetime import datetime

# Add custom levels
TRACE = 5  # Lower than DEBUG (10)
CHECK = 15  # Between DEBUG (10) and INFO (20)
logging.addLevelName(TRACE, 'TRACE')
logging.addLevelName(CHECK, 'CHECK')


def trace(self, msg, *args, **kwargs):
    """Log 'msg % args' with severity 'TRACE'."""
    if self.isEnabledFor(TRACE):
        self._log(TRACE, msg, args, **kwargs)


def check(self, msg, *args, **kwargs):
    """Log 'msg % args' with severity 'CHECK'."""
    if self.isEnabledFor(CHECK):
        self._log(CHECK, msg, args, **kwargs)


# Add methods to Logger class if not already present
if not hasattr(logging.Logger, 'trace'):
    logging.Logger.trace = trace
if not hasattr(logging.Logger, 'check'):
    logging.Logger.check = check

# ANSI color codes
COLORS = {
    'RESET': '\033[0m',
    'BOLD': '\033[1m',
    'RED': '\033[31m',
    'GREEN': '\033[32m',
    'YELLOW': '\033[33m',
    'BLUE': '\033[34m',
    'BRIGHT_RED': '\033[91m',
    'BRIGHT_MAGENTA': '\033[95m',
    'INDIGO': '\033[38;5;54m',
}

# Log level colors and emojis
LEVEL_STYLES = {
    'TRACE': {
        'color': COLORS['INDIGO'],
        'emoji': '🧵'
    },
    'DEBUG': {
        'color': COLORS['BLUE'],
        'emoji': '🔍'
    },
    'CHECK': {
        'color': COLORS['GREEN'],
        'emoji': '✔️'
    },
    'INFO': {
        'color': COLORS['RESET'],
        'emoji': 'ℹ️'
    },
    'WARNING': {
        'color': COLORS['YELLOW'],
        'emoji': '⚠️'
    },
    'ERROR': {
        'color': COLORS['RED'],
        'emoji': '❌'
    },
    'CRITICAL': {
        'color': COLORS['BRIGHT_RED'] + COLORS['BOLD'],
        'emoji': '💀'
    },
}

# Event-specific styles, matched against the message text
EVENT_STYLES = {
    'CONSTRUCT': {
        'emoji': '🏗️'
    },
    'VERIFY': {
        'emoji': '🔎'
    },
    'SIMPLE': {
        'emoji': '💎'
    },
    'BRACE': {
        'emoji': '🧮'
    },
    'ISO': {
        'emoji': '🔗'
    },
    'PROBE': {
        'emoji': '🧪'
    },
    'ORBIT': {
        'emoji': '🪐'
    },
    'RETRACT': {
        'emoji': '↩️'
    },
    'CAP': {
        'color': COLORS['YELLOW'],
        'emoji': '🚧'
    },
    'CONFIG': {
        'emoji': '⚙️'
    },
}


class ColoredFormatter(logging.Formatter):
    """Custom formatter for colored console output."""

    def __init__(self, use_colors=True, fmt=None):
        super().__init__(fmt=fmt or self._get_default_format(use_colors))
        self.use_colors = use_colors
        self.max_level_width = max(len(level) for level in LEVEL_STYLES.keys())

    def _get_default_format(self, use_colors):
        """Get the default format string based on output type."""
        if use_colors:
            return '%(asctime)s - %(levelname)s %(message)s'
        return '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    def formatTime(self, record, datefmt=None):
        """Format the timestamp with milliseconds."""
        created = datetime.fromtimestamp(record.created)
        if datefmt:
            return created.strftime(datefmt)
        return created.strftime('%Y-%m-%d %H:%M:%S.%f')[:-3]

    def format(self, record):
        record_copy = logging.makeLogRecord(record.__dict__)

        if not self.use_colors:
            return super().format(record_copy)

        level_style = LEVEL_STYLES.get(record_copy.levelname, {'color': '', 'emoji': ''})

        event_style = None
        message = str(record_copy.msg)
        for event, style in EVENT_STYLES.items():
            if event.lower() in message.lower():
                event_style = style
                break

        color = event_style.get('color', level_style['color']) if event_style else level_style['color']
        emoji = event_style.get('emoji', level_style['emoji']) if event_style else level_style['emoji']

        # isomorphism search steps
        if record_copy.levelname == 'TRACE' and message.startswith('search'):
            color = COLORS['BRIGHT_MAGENTA']

        padding = ' ' * (self.max_level_width - len(record_copy.levelname))
        record_copy.levelname = f"{color}{record_copy.levelname}{padding} - "
        record_copy.msg = f"{emoji}  {message}{COLORS['RESET']}"

        return super().format(record_copy)


def setup_logger(name, config):
    """Set up the logger with an optional file handler and a console handler.

    The console handler writes to stderr; stdout is reserved for reports.
    """
    logger = logging.getLogger(name)

    log_level = getattr(logging, str(config.get('log_level', 'WARNING')).upper(), logging.WARNING)

    if config.get('log_trace', False):
        log_level = min(log_level, TRACE)

    if config.get('log_checks', False):
        log_level = min(log_level, CHECK)

    logger.setLevel(log_level)
    logger.handlers = []
    logger.propagate = False

    if config.get('log_file'):
        file_handler = logging.FileHandler(config['log_file'])
        file_handler.setFormatter(ColoredFormatter(use_colors=False))
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(ColoredFormatter(use_colors=sys.stderr.isatty()))
    logger.addHandler(console_handler)

    return logger
