"""Command handler for ybsimple: argument parsing, dispatch and exit codes."""

import argparse
import logging

from ..commands import load_commands
from .errors import CapExceededError, DescriptorError, VerificationError, YBSimpleError

logger = logging.getLogger('YBSimple')


def global_parser(add_help=False):
    """Options shared by every invocation (also parsed before config loading)."""
    parser = argparse.ArgumentParser(add_help=add_help)
    parser.add_argument('-c', '--config', default=None,
                        help='Path to config file (default: config.yaml if present)')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Increase log verbosity (-v info, -vv debug, -vvv trace)')
    parser.add_argument('--log-checks', action='store_true',
                        help='Log one line per verified predicate')
    return parser


class CommandHandler:
    def __init__(self, engine):
        """Initialize command handler."""
        self.engine = engine
        self.logger = self.engine.logger
        self.commands = {}
        self._load_commands()

    def _load_commands(self):
        """Load and initialize all available commands."""
        self.commands = {}
        logger.debug("Handler: Starting command load...")

        command_classes = load_commands()
        if not command_classes:
            logger.error("Handler: No commands were loaded!")
            return

        for cmd_name, command_class in command_classes.items():
            try:
                command = command_class(self.engine)
                # Verify command name matches the key
                if command.name != cmd_name:
                    logger.warning(f"Handler: Command name mismatch: {cmd_name} != {command.name}")
                    continue
                self.commands[cmd_name] = command
            except Exception as e:
                logger.error(f"Handler: Error initializing command {command_class.__name__}: {e}", exc_info=True)

        logger.debug(f"Handler: loaded {len(self.commands)} commands: {', '.join(sorted(self.commands))}")

    def build_parser(self):
        parser = argparse.ArgumentParser(
            prog='ybsimple',
            description='ybsimple - involutive Yang-Baxter solutions and finite left braces',
            parents=[global_parser()],
        )
        subparsers = parser.add_subparsers(dest='verb', metavar='verb')
        subparsers.required = True
        for name in sorted(self.commands):
            command = self.commands[name]
            sub = subparsers.add_parser(name, help=command.help, usage=f"ybsimple {name} {command.usage}")
            command.add_arguments(sub)
        return parser

    def run(self, argv):
        """Parse ``argv``, run the verb and map errors to exit codes.

        Returns:
            int: 0 on success, 1 on a failed predicate, 2 on a malformed
            descriptor or file, 3 when a cap is exceeded.
        """
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return 2 if e.code else 0

        command = self.commands[args.verb]
        self.logger.debug(f"Handler: running {args.verb}")
        try:
            code = command.execute(args)
        except CapExceededError as e:
            self.logger.warning(f"cap {e.what} hit at {e.reached} (limit {e.limit})")
            self.engine.emit(["error: cap_exceeded", f"cap: {e.what}", f"limit: {e.limit}"])
            return e.exit_code
        except DescriptorError as e:
            self.logger.error(f"{args.verb}: {e}")
            self.engine.emit(["error: descriptor", f"message: {e}"])
            return e.exit_code
        except VerificationError as e:
            self.logger.error(f"verify {e.predicate} failed in {args.verb}: {e}")
            self.engine.emit([f"error: {e.predicate}",
                              f"witness: {', '.join(map(str, e.witness)) if e.witness else '-'}"])
            return e.exit_code
        except YBSimpleError as e:
            self.logger.error(f"{args.verb}: {e}")
            self.engine.emit([f"error: {e}"])
            return e.exit_code
        return code or 0
