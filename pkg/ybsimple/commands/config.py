"""Configuration inspection command for ybsimple."""

import yaml

from .. import commands
from ..core.errors import DescriptorError
from ..utils.config import save_config


class ConfigCommand(commands.Command):
    @property
    def name(self):
        """Command name."""
        return "config"

    @property
    def help(self):
        """Command help."""
        return "Print the effective configuration (or one dotted key), optionally saving it"

    @property
    def usage(self):
        """Command usage."""
        return "[variable] [--save FILE]"

    def add_arguments(self, parser):
        parser.add_argument('variable', nargs='?')
        parser.add_argument('--save', help='write the effective configuration to this YAML file')

    def execute(self, args):
        """Execute the config command."""
        value = self.engine.config
        if args.variable:
            # Split on dots for nested access
            try:
                for part in args.variable.split('.'):
                    value = value[part]
            except (KeyError, TypeError):
                raise DescriptorError(f"config variable '{args.variable}' not found")
            if isinstance(value, (dict, list)):
                value = yaml.safe_dump(value, default_flow_style=True).strip()
            self.engine.emit(f"{args.variable}: {value}")
        else:
            self.engine.emit(yaml.safe_dump(value, default_flow_style=False, sort_keys=True).rstrip())
        if args.save:
            save_config(self.engine.config, args.save)
            self.logger.info(f"config saved to {args.save}")
        return 0
