#!/usr/bin/env python3
"""Main entry point for ybsimple."""

import sys

from .core.engine import Engine
from .core.errors import DescriptorError
from .core.handler import global_parser
from .utils.config import load_config


def main(argv=None, out=None):
    """Main entry point."""
    argv = sys.argv[1:] if argv is None else list(argv)
    pre, _ = global_parser().parse_known_args(argv)

    try:
        config = load_config(pre.config)
    except DescriptorError as e:
        print("error: descriptor", file=out or sys.stdout)
        print(f"message: {e}", file=out or sys.stdout)
        return e.exit_code

    if pre.verbose:
        config['log_level'] = {1: 'INFO', 2: 'DEBUG'}.get(pre.verbose, 'DEBUG')
        config['log_trace'] = config.get('log_trace') or pre.verbose >= 3
    if pre.log_checks:
        config['log_checks'] = True

    engine = Engine(config, config_file=pre.config, out=out)
    return engine.run(argv)


if __name__ == '__main__':
    sys.exit(main())
