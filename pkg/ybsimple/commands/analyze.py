"""Analyze command: predicate report for a solution file or a constructed family."""

from . import Command, add_cap_arguments
from ..core.artifacts import load_solution
from ..core.constructions import (analyze_newsol, construct_newsol, make_jfamily, parse_assignments,
                                  va_quotient)
from ..core.errors import DescriptorError
from ..core.ybcore import analyze_solution


class AnalyzeCommand(Command):
    @property
    def name(self):
        """Command name."""
        return "analyze"

    @property
    def help(self):
        """Command help."""
        return "Report orbits, retraction, multipermutation level, simplicity and group order"

    @property
    def usage(self):
        """Command usage."""
        return "[file] [--group G --aut M --j J]"

    def add_arguments(self, parser):
        parser.add_argument('file', nargs='?')
        parser.add_argument('--group')
        parser.add_argument('--aut')
        parser.add_argument('--j')
        add_cap_arguments(parser, 'max_group_order', 'max_perm_group')

    def execute(self, args):
        """Execute the analyze command."""
        if args.file:
            S = load_solution(args.file)
            self.engine.emit(analyze_solution(S, self.setting(args, 'max_perm_group')).lines())
            return 0

        if not args.j:
            raise DescriptorError("analyze needs a solution file or --group, --aut and --j")
        A, t = self.group_and_aut(args)
        j = make_jfamily(A, t, parse_assignments(A, args.j))
        S = construct_newsol(j)
        lines = analyze_solution(S, self.setting(args, 'max_perm_group')).lines()
        report = analyze_newsol(j, S)
        lines += report.lines()
        failing = next((a for a, V in sorted(report.V.items()) if not V.is_whole()), None)
        if failing is not None:
            image, _ = va_quotient(j, failing, S)
            lines += [f"va_quotient_element: {A.label(failing)}", f"va_quotient_size: {image.size}"]
        self.engine.emit(lines)
        return 1 if report.violations else 0
