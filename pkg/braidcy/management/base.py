import json
import logging

from django.core.management.base import BaseCommand, CommandError

from braidcy.exceptions import BraidcyError, InputRejected
from braidcy.report import parse_input, with_options
from braidcy.utils import canonical_json

logger = logging.getLogger(__name__)

VERBOSITY_LEVELS = {2: logging.INFO, 3: logging.DEBUG}


class BraidcyCommand(BaseCommand):
    """Shared plumbing: input loading, log levels and exit codes 0 / 2 / 1."""

    formats = ("json", "text")

    def add_input_arguments(self, parser, cap=True, convention=True):
        parser.add_argument("input", help="braiding document (JSON), or - for stdin")
        if cap:
            parser.add_argument("--cap", type=int, help="highest tensor degree explored (at least 2)")
        if convention:
            parser.add_argument(
                "--convention",
                choices=["standard", "transpose"],
                help="transpose: table rows are output pairs",
            )
        parser.add_argument("--format", choices=self.formats, default="json")

    def handle(self, *args, **options):
        level = VERBOSITY_LEVELS.get(options.get("verbosity", 1))
        if level is not None:
            logging.getLogger("braidcy").setLevel(level)
        try:
            self.run(options)
        except CommandError:
            raise
        except BraidcyError as exc:
            logger.error("%s: %s", exc.code, exc.message)
            raise CommandError(f"{exc.code}: {exc.message}", returncode=1)
        except Exception as exc:
            logger.exception("internal error")
            raise CommandError(f"internal error: {exc}", returncode=1)

    def run(self, options):
        raise NotImplementedError

    def load(self, options):
        cap = options.get("cap")
        if cap is not None and cap < 2:
            self.reject("parse", InputRejected("--cap must be at least 2", cap=cap))
        try:
            spec = parse_input(options["input"])
        except InputRejected as exc:
            self.reject("parse", exc)
        return with_options(spec, cap=cap, convention=options.get("convention"))

    def reject(self, stage, exc):
        payload = {"status": "rejected", "rejected_stage": stage, "error": exc.as_dict()}
        self.stdout.write(canonical_json(payload))
        raise CommandError(f"input rejected at stage {stage}: {exc.code}: {exc.message}", returncode=2)

    def finish(self, report):
        if report.exit_code:
            error = report.error
            kind = "input rejected" if report.exit_code == 2 else "internal error"
            raise CommandError(
                f"{kind} at stage {report.stage}: {error.code}: {error.message}",
                returncode=report.exit_code,
            )

    @staticmethod
    def json_option(value, name):
        try:
            return json.loads(value)
        except json.JSONDecodeError as exc:
            raise CommandError(f"--{name} is not valid JSON: {exc.msg}", returncode=2)
