from django.core.management.base import CommandError

from braidcy.exceptions import InputRejected
from braidcy.families import FAMILIES, builtin
from braidcy.management.base import BraidcyCommand
from braidcy.utils import canonical_json


class Command(BraidcyCommand):
    help = "Print the expanded input document of a built-in braiding."

    def add_arguments(self, parser):
        parser.add_argument("name", choices=sorted(FAMILIES))
        parser.add_argument("--qmatrix", help='JSON q-matrix for the diagonal family, e.g. [[1,"2"],["1/2",1]]')
        parser.add_argument("--cap", type=int)

    def run(self, options):
        params = {}
        if options["qmatrix"] is not None:
            params["qmatrix"] = self.json_option(options["qmatrix"], "qmatrix")
        if options["cap"] is not None:
            params["cap"] = options["cap"]
        try:
            spec = builtin(options["name"], params)
        except InputRejected as exc:
            self.stderr.write(f"{exc.code}: {exc.message}")
            raise CommandError(f"{exc.code}: {exc.message}", returncode=2)
        self.stdout.write(canonical_json(spec.to_document()))
