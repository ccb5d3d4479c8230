"""Command system for ybsimple."""

from abc import ABC, abstractmethod
import importlib
import inspect
import logging
from typing import Dict, Type
from pathlib import Path

from ..core.abgroup import aut_from_matrix, parse_group, parse_matrix
from ..core.errors import CapExceededError, DescriptorError

logger = logging.getLogger('YBSimple')


class Command(ABC):
    def __init__(self, engine):
        """Initialize command with engine instance."""
        self.engine = engine
        # Only set logger if engine is provided (not None)
        self.logger = engine.logger if engine is not None else logging.getLogger('YBSimple')

    @abstractmethod
    def execute(self, args):
        """Execute the command and return its exit code."""
        pass

    @property
    @abstractmethod
    def name(self):
        """Command name."""
        pass

    @property
    @abstractmethod
    def help(self):
        """Command help text."""
        pass

    @property
    def usage(self):
        """Command usage text."""
        return self.name

    def add_arguments(self, parser):
        """Register verb-specific arguments on the subparser."""
        pass

    def setting(self, args, key):
        """A cap or option: the CLI flag if given, else the command/global config.

        Args:
            args: Parsed arguments
            key: Config key; the flag attribute has the same name
        """
        value = getattr(args, key, None)
        if value is not None:
            return value
        return self.engine.get_command_config(self.name, key)

    def group_and_aut(self, args):
        """Parse ``--group`` and ``--aut`` into a group and an automorphism."""
        if not args.group or not args.aut:
            raise DescriptorError(f"{self.name} needs --group and --aut")
        A = parse_group(args.group)
        cap = self.setting(args, 'max_group_order')
        if A.order > cap:
            raise CapExceededError('max_group_order', cap, A.order)
        return A, aut_from_matrix(A, parse_matrix(args.aut))


def add_cap_arguments(parser, *keys):
    """Add ``--max-...`` flags that override configuration caps."""
    for key in keys:
        parser.add_argument(f"--{key.replace('_', '-')}", dest=key, type=int, default=None,
                            help=f"override the {key} cap")


def load_commands() -> Dict[str, Type[Command]]:
    """Dynamically load all command classes.

    Returns:
        Dict mapping command names to command classes
    """
    commands = {}
    commands_dir = Path(__file__).parent

    # Load each .py file in the commands directory
    for file in sorted(commands_dir.glob('*.py')):
        if file.name == '__init__.py':
            continue

        try:
            # Import the module dynamically
            module_name = f"ybsimple.commands.{file.stem}"
            module = importlib.import_module(module_name)

            # Find Command subclasses in the module
            for name, obj in inspect.getmembers(module, inspect.isclass):
                is_command = any(base.__name__ == 'Command' and base.__module__ == 'ybsimple.commands'
                                 for base in obj.__mro__[1:])

                if is_command and obj.__module__ == module.__name__:
                    try:
                        # Get command name from class property without instantiating
                        cmd_name = obj.name.fget(None)
                        commands[cmd_name] = obj
                        logger.debug(f"Found command: {cmd_name}")
                    except Exception as e:
                        logger.error(f"Error getting command name for {name}: {e}", exc_info=True)

        except Exception as e:
            logger.error(f"Error loading command module {file.name}: {e}", exc_info=True)

    return commands


# Export only the essential components
__all__ = ['Command', 'add_cap_arguments', 'load_commands']
