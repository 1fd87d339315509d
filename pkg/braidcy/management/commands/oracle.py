from braidcy.management.base import BraidcyCommand
from braidcy.report import analyze, emit_report


class Command(BraidcyCommand):
    help = "Print the brute-force Frobenius data of R^!: Gram blocks, Nakayama automorphism, modular function."

    def add_arguments(self, parser):
        self.add_input_arguments(parser)

    def run(self, options):
        spec = self.load(options)
        report = analyze(spec, stop_after="oracle")
        self.stdout.write(emit_report(report, options["format"], oracle_only=True), ending="")
        self.finish(report)
