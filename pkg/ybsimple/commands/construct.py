"""Construct command: build solutions and braces from family parameters."""

from . import Command, add_cap_arguments
from ..core.artifacts import save_brace, save_solution
from ..core.brace import brace_from_solution
from ..core.constructions import (analyze_newsol, build_asym_model, construct_grid, construct_newsol,
                                  construct_simple_family, make_jfamily, model_perm_brace,
                                  parse_assignments, parse_prime_powers)
from ..core.errors import DescriptorError


class ConstructCommand(Command):
    @property
    def name(self):
        """Command name."""
        return "construct"

    @property
    def help(self):
        """Command help."""
        return "Build a solution (and optionally its brace) from family parameters"

    @property
    def usage(self):
        """Command usage."""
        return ("{newsol,grid,simple-family,asym-model} [--group G --aut M --j J] "
                "[--n N --m M --t T] [--p P --primes P1^M1,...] [-o FILE] [--brace FILE]")

    def add_arguments(self, parser):
        parser.add_argument('family', choices=['newsol', 'grid', 'simple-family', 'asym-model'])
        parser.add_argument('--group', help='group descriptor, e.g. Z2xZ2')
        parser.add_argument('--aut', help='automorphism matrix, e.g. [[0,1],[1,1]]')
        parser.add_argument('--j', help="family a->j_a, e.g. '0->0,1->1' or 'id'")
        parser.add_argument('--n', type=int)
        parser.add_argument('--m', type=int)
        parser.add_argument('--t', type=int)
        parser.add_argument('--p', type=int)
        parser.add_argument('--primes', help='prime powers, e.g. 3^1,7^1')
        parser.add_argument('-o', '--output', help='write the solution file here')
        parser.add_argument('--brace', help='write the brace file here')
        parser.add_argument('--report', action='store_true', help='print the family analysis report')
        parser.add_argument('--model', action='store_true',
                            help='asym-model: also build and certify the permutation-group model')
        add_cap_arguments(parser, 'max_group_order', 'max_perm_group', 'max_brace_size', 'iso_max_nodes')

    def _jfamily(self, args):
        A, t = self.group_and_aut(args)
        if not args.j:
            raise DescriptorError(f"{args.family} needs --j")
        return make_jfamily(A, t, parse_assignments(A, args.j))

    def execute(self, args):
        """Execute the construct command."""
        handler = getattr(self, f"_{args.family.replace('-', '_')}")
        lines, solution, brace = handler(args)
        if solution is not None and args.output:
            save_solution(solution, args.output)
            lines.append(f"solution_file: {args.output}")
        if args.brace:
            if brace is None:
                brace, _ = brace_from_solution(solution, self.setting(args, 'max_perm_group'),
                                               self.setting(args, 'max_brace_size'))
            save_brace(brace, args.brace)
            lines.append(f"brace_file: {args.brace}")
        self.engine.emit(lines)
        return 1 if any(line.startswith('violations: ') and line != 'violations: 0' for line in lines) else 0

    def _newsol(self, args):
        j = self._jfamily(args)
        S = construct_newsol(j)
        lines = ["family: newsol", f"group: {j.group.descriptor()}", f"size: {S.size}"]
        if args.report:
            lines += analyze_newsol(j, S).lines()
        return lines, S, None

    def _grid(self, args):
        if None in (args.n, args.m, args.t):
            raise DescriptorError("grid needs --n, --m and --t")
        S = construct_grid(args.n, args.m, args.t)
        return ["family: grid", f"size: {S.size}", "indecomposable: true", "irretractable: true"], S, None

    def _simple_family(self, args):
        if args.p is None or not args.primes:
            raise DescriptorError("simple-family needs --p and --primes")
        family = construct_simple_family(args.p, parse_prime_powers(args.primes),
                                         max_size=self.setting(args, 'max_brace_size'),
                                         max_nodes=self.setting(args, 'iso_max_nodes'))
        lines = [
            "family: simple-family",
            f"n: {family.n}",
            f"t: {family.t}",
            f"brace_size: {family.brace.size}",
            f"size: {family.solution.size}",
            "brace_simple: true",
            "solution_simple: true",
            f"point_map_identity: {'true' if family.point_map_is_identity else 'false'}",
        ]
        return lines, family.solution, family.brace

    def _asym_model(self, args):
        j = self._jfamily(args)
        m = build_asym_model(j, self.setting(args, 'max_brace_size'))
        lines = [
            "family: asym-model",
            f"brace_size: {m.brace.size}",
            f"size: {m.solution.size}",
            f"radical_order: {m.radical.order}",
            f"coprime: {'true' if m.coprime else 'false'}",
            f"additively_generated: {'true' if m.additively_generated else 'false'}",
        ]
        if args.model:
            model = model_perm_brace(m, self.setting(args, 'max_perm_group'), self.setting(args, 'iso_max_nodes'))
            lines += [f"model_size: {model.size}", "model_isomorphic: true"]
        return lines, m.solution, m.brace
