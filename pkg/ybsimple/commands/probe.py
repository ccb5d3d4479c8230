"""Probe command: exhaustive experiments over (A, t, j)."""

from . import Command, add_cap_arguments
from ..core.constructions import probe_all, probe_converse, sweep_newsol
from ..core.errors import CapExceededError


class ProbeCommand(Command):
    @property
    def name(self):
        """Command name."""
        return "probe"

    @property
    def help(self):
        """Command help."""
        return "Tabulate the V_a condition against simplicity, or sweep all small instances"

    @property
    def usage(self):
        """Command usage."""
        return "[--group G --aut M] [--max-order N] [--all-auts] [--sweep]"

    def add_arguments(self, parser):
        parser.add_argument('--group')
        parser.add_argument('--aut')
        parser.add_argument('--max-order', dest='max_order', type=int, default=None,
                            help='probe every group up to this order')
        parser.add_argument('--all-auts', action='store_true',
                            help='every automorphism instead of one per conjugacy class')
        parser.add_argument('--sweep', action='store_true',
                            help='construct and analyze every valid family up to --max-order')
        add_cap_arguments(parser, 'max_group_order', 'probe_max_order', 'probe_max_families')

    def execute(self, args):
        """Execute the probe command."""
        cap = self.setting(args, 'probe_max_order')
        max_order = args.max_order if args.max_order is not None else cap
        if max_order > cap:
            raise CapExceededError('probe_max_order', cap, max_order)
        families = self.setting(args, 'probe_max_families')

        if args.sweep:
            stats = sweep_newsol(max_order)
            lines = [f"instances: {stats.instances}", f"simple: {stats.simple}",
                     f"violations: {len(stats.violations)}"]
            lines += [f"violation: {v}" for v in stats.violations]
            self.engine.emit(lines)
            return 1 if stats.violations else 0

        if args.group:
            A, t = self.group_and_aut(args)
            reports = [probe_converse(A, t, cap, families)]
        else:
            reports = probe_all(max_order, families, conjugacy_reduce=not args.all_auts)

        lines = []
        for report in reports:
            lines += report.lines()
            lines.append('')
        violations = sum(len(r.necessary_violations) for r in reports)
        lines += [
            f"probed: {len(reports)}",
            f"truncated: {sum(r.truncated for r in reports)}",
            f"necessary_violations: {violations}",
            f"converse_counterexamples: {sum(len(r.counterexamples) for r in reports)}",
        ]
        self.engine.emit(lines)
        return 1 if violations else 0
