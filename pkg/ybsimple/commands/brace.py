"""Brace command: brace report for a brace file or for the group of a solution."""

from . import Command, add_cap_arguments
from ..core.artifacts import kind_of, load_brace, load_solution, save_brace
from ..core.brace import analyze_brace, brace_from_solution


class BraceCommand(Command):
    @property
    def name(self):
        """Command name."""
        return "brace"

    @property
    def help(self):
        """Command help."""
        return "Report socle, simplicity and ideal count of a brace (or of a solution's permutation group)"

    @property
    def usage(self):
        """Command usage."""
        return "<file> [-o FILE]"

    def add_arguments(self, parser):
        parser.add_argument('file', help='brace file, or solution file to take the permutation group of')
        parser.add_argument('-o', '--output', help='write the brace file here')
        add_cap_arguments(parser, 'max_perm_group', 'max_brace_size', 'ideal_count_max_size')

    def execute(self, args):
        """Execute the brace command."""
        max_size = self.setting(args, 'max_brace_size')
        if kind_of(args.file) == 'solution':
            S = load_solution(args.file)
            B, _ = brace_from_solution(S, self.setting(args, 'max_perm_group'), max_size)
            self.logger.info(f"brace of the permutation group of {args.file}: order {B.size}")
        else:
            B = load_brace(args.file, max_size)
        lines = analyze_brace(B, self.setting(args, 'ideal_count_max_size')).lines()
        if args.output:
            save_brace(B, args.output)
            lines.append(f"brace_file: {args.output}")
        self.engine.emit(lines)
        return 0
