from braidcy.management.base import BraidcyCommand
from braidcy.report import analyze, emit_validation


class Command(BraidcyCommand):
    help = "Check the braid equation, invertibility, rigidity and the Hecke label of a braiding."

    def add_arguments(self, parser):
        self.add_input_arguments(parser, cap=False)

    def run(self, options):
        spec = self.load(options)
        report = analyze(spec, stop_after="validate")
        self.stdout.write(emit_validation(report, options["format"]), ending="")
        self.finish(report)
