"""Isomorphism command."""

from . import Command, add_cap_arguments
from ..core.artifacts import kind_of, load_brace, load_solution
from ..core.brace import brace_from_solution, find_brace_isomorphism
from ..core.errors import DescriptorError
from ..core.ybcore import find_solution_isomorphism


class IsoCommand(Command):
    @property
    def name(self):
        """Command name."""
        return "iso"

    @property
    def help(self):
        """Command help."""
        return "Search an isomorphism between two solutions, two braces, or a brace and a solution's group"

    @property
    def usage(self):
        """Command usage."""
        return "<file1> <file2> | --brace FILE --from-solution FILE"

    def add_arguments(self, parser):
        parser.add_argument('files', nargs='*')
        parser.add_argument('--brace', help='brace file')
        parser.add_argument('--from-solution', dest='from_solution',
                            help='solution whose permutation-group brace is compared with --brace')
        add_cap_arguments(parser, 'max_perm_group', 'max_brace_size', 'iso_max_nodes')

    def _operands(self, args):
        max_size = self.setting(args, 'max_brace_size')
        if args.brace and args.from_solution:
            S = load_solution(args.from_solution)
            G, _ = brace_from_solution(S, self.setting(args, 'max_perm_group'), max_size)
            return 'brace', load_brace(args.brace, max_size), G
        if len(args.files) != 2:
            raise DescriptorError("iso needs two files, or --brace with --from-solution")
        kinds = [kind_of(path) for path in args.files]
        if kinds[0] != kinds[1]:
            raise DescriptorError(f"cannot compare a {kinds[0]} with a {kinds[1]}")
        if kinds[0] == 'solution':
            return 'solution', load_solution(args.files[0]), load_solution(args.files[1])
        return 'brace', load_brace(args.files[0], max_size), load_brace(args.files[1], max_size)

    def execute(self, args):
        """Execute the iso command."""
        kind, first, second = self._operands(args)
        max_nodes = self.setting(args, 'iso_max_nodes')
        if kind == 'solution':
            f = find_solution_isomorphism(first, second, max_nodes)
        else:
            f = find_brace_isomorphism(first, second, max_nodes)
        lines = [f"kind: {kind}", f"isomorphic: {'true' if f is not None else 'false'}"]
        if f is not None:
            lines.append(f"map: {[int(v) for v in f]}")
        self.logger.info(f"iso {kind}s of size {first.size}: {'found' if f is not None else 'none'}")
        self.engine.emit(lines)
        return 0
