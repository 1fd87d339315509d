from braidcy.management.base import BraidcyCommand
from braidcy.report import analyze, emit_report, save_report


class Command(BraidcyCommand):
    help = "Run the full analysis of a Hecke braiding and print the report."

    def add_arguments(self, parser):
        self.add_input_arguments(parser)
        parser.add_argument("--save", action="store_true", help="store the report as an AnalysisRecord")

    def run(self, options):
        spec = self.load(options)
        report = analyze(spec)
        self.stdout.write(emit_report(report, options["format"]), ending="")
        if options["save"]:
            record = save_report(report)
            self.stderr.write(f"saved analysis record {record.pk}")
        self.finish(report)
