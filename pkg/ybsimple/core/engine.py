"""Engine object shared by the command handler and every command."""

import sys

from ..utils.logger import setup_logger
from .handler import CommandHandler


class Engine:
    def __init__(self, config, config_file=None, out=None):
        """Initialize the engine with a merged configuration.

        Args:
            config: Configuration dict (defaults already merged).
            config_file: Path the configuration came from, if any.
            out: Stream reports are written to (default stdout).
        """
        self.config = config
        self.config_file = config_file
        self.out = out or sys.stdout
        self.logger = setup_logger('YBSimple', config)
        self.handler = CommandHandler(self)
        if config_file:
            self.logger.debug(f"config loaded from {config_file}")

    def get_command_config(self, command, key, default=None):
        """Get a command-specific config value, falling back to global config.

        Args:
            command: The command (verb) name
            key: The config key to get
            default: Default value if neither the command nor the global
                config sets the key

        Returns:
            The command-specific value if it exists, otherwise the global
            value, or the default if neither exists.
        """
        command_config = (self.config.get('commands') or {}).get(command) or {}
        if key in command_config:
            self.logger.debug(f"config: {command}.{key} = {command_config[key]} (command override)")
            return command_config[key]
        return self.config.get(key, default)

    def emit(self, lines):
        """Write report lines to the output stream."""
        if isinstance(lines, str):
            lines = [lines]
        for line in lines:
            print(line, file=self.out)

    def run(self, argv):
        return self.handler.run(argv)
