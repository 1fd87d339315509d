import dataclasses
import io
import json
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from braidcy.exceptions import BadFamilyParams, BadScalar, DimensionMismatch, ParseError
from braidcy.families import builtin
from braidcy.forms import InputSpec
from braidcy.report import (
    analyze,
    emit_report,
    emit_validation,
    parse_input,
    resolve_cap,
    with_options,
)


def stream(document):
    text = document if isinstance(document, str) else json.dumps(document, indent=2)
    return io.StringIO(text)


QP2_DOCUMENT = {
    "name": "quantum plane",
    "dimension": 2,
    "label": "1",
    "braiding": [
        ["1", "0", "0", "0"],
        ["0", "0", "2", "0"],
        ["0", "1/2", "0", "0"],
        ["0", "0", "0", "1"],
    ],
}


class ParseInputTests(SimpleTestCase):
    def test_document(self):
        spec = parse_input(stream(QP2_DOCUMENT))
        self.assertEqual(spec.name, "quantum plane")
        self.assertEqual(spec.dimension, 2)
        self.assertEqual(spec.label, 1)
        self.assertEqual(spec.table[1][2], 2)
        self.assertEqual(spec.convention, "standard")

    def test_integers_are_scalars(self):
        document = {"dimension": 1, "braiding": [[3]]}
        spec = parse_input(stream(document))
        self.assertEqual(spec.table, ((Fraction(3),),))
        self.assertIsNone(spec.label)

    def test_round_trip(self):
        spec = parse_input(stream(QP2_DOCUMENT))
        self.assertEqual(parse_input(stream(spec.to_document())), spec)

    def test_family_shorthand(self):
        spec = parse_input(stream({"family": "diagonal", "qmatrix": [[1, 2], ["1/2", 1]]}))
        self.assertEqual(spec, builtin("diagonal", {"qmatrix": [[1, 2], ["1/2", 1]]}))

    def test_bad_family(self):
        with self.assertRaises(BadFamilyParams):
            parse_input(stream({"family": "example2", "qmatrix": [[1]]}))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            parse_input(stream({"dimension": 2, "braiding": [["1", "0"], ["0", "1"]]}))

    def test_bad_scalar(self):
        document = dict(QP2_DOCUMENT, braiding=[["1.5", 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        with self.assertRaises(BadScalar) as cm:
            parse_input(stream(document))
        self.assertEqual(cm.exception.token, "1.5")

    def test_zero_denominator(self):
        with self.assertRaises(BadScalar):
            parse_input(stream({"dimension": 1, "braiding": [["1/0"]]}))

    def test_invalid_json_reports_the_line(self):
        with self.assertRaises(ParseError) as cm:
            parse_input(stream('{\n  "dimension": 1,\n  "braiding": [[1]\n}'))
        self.assertEqual(cm.exception.line, 4)

    def test_missing_field(self):
        with self.assertRaises(ParseError) as cm:
            parse_input(stream('{\n  "braiding": [[1]]\n}'))
        self.assertIn("dimension", cm.exception.reason)

    def test_not_an_object(self):
        with self.assertRaises(ParseError):
            parse_input(stream("[1, 2]"))

    def test_missing_file(self):
        with self.assertRaises(ParseError):
            parse_input("/nonexistent/braiding.json")

    def test_transpose_convention(self):
        transposed = [list(row) for row in zip(*QP2_DOCUMENT["braiding"])]
        document = dict(QP2_DOCUMENT, braiding=transposed, convention="transpose")
        spec = parse_input(stream(document))
        standard = parse_input(stream(QP2_DOCUMENT))
        self.assertEqual(spec.coefficient_table(), standard.coefficient_table())


class CapTests(SimpleTestCase):
    def test_precedence(self):
        spec = builtin("example2", {"cap": 5})
        self.assertEqual(resolve_cap(spec, 7), 7)
        self.assertEqual(resolve_cap(spec), 5)
        self.assertEqual(resolve_cap(builtin("example2")), 7)

    @override_settings(BRAIDCY={"TENSOR_BUDGET": 30000, "MIN_CAP": 4, "MAX_CAP": 6, "REPORT_VERSION": "1.0"})
    def test_configured_ceiling(self):
        self.assertEqual(resolve_cap(builtin("trivial1")), 6)

    def test_with_options(self):
        spec = with_options(builtin("trivial1"), cap=3, convention="transpose")
        self.assertEqual((spec.cap, spec.convention), (3, "transpose"))


class AnalyzeTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.example2 = analyze(builtin("example2"), cap=6)

    def test_example2_completes(self):
        report = self.example2
        self.assertEqual(report.status, "completed")
        self.assertEqual(report.exit_code, 0)
        self.assertFalse(report.is_cy)

    def test_example2_values(self):
        data = self.example2.data
        minus_identity = [["-1" if i == j else "0" for j in range(4)] for i in range(4)]
        identity = [["1" if i == j else "0" for j in range(4)] for i in range(4)]
        self.assertEqual(data["validation"]["label"], "1")
        self.assertEqual(data["validation"]["label_source"], "detected")
        self.assertEqual(data["profile"]["dims_dual"], [1, 4, 6, 4, 1, 0, 0])
        self.assertEqual(data["profile"]["dims_R"], [1, 4, 10, 20, 35, 56, 84])
        self.assertEqual(data["profile"]["gldim"], 4)
        self.assertEqual(data["homological"]["Q"], "1")
        self.assertEqual(data["homological"]["D"], minus_identity)
        self.assertEqual(data["phi"], identity)
        self.assertEqual(data["descriptor"]["twist"], minus_identity)
        self.assertTrue(data["oracle"]["agrees"])
        self.assertEqual(data["oracle"]["eta"]["1"], identity)
        self.assertEqual(data["oracle"]["eta"]["1"], data["nakayama_deg1"])
        self.assertTrue(all(data["structural_checks"].values()))
        self.assertEqual(data["as_regularity"]["window"], [-2, 4])

    def test_example2_flags_the_stated_verdict(self):
        caveats = self.example2.data["caveats"]
        flagged = [line for line in caveats if line.startswith("example2:")]
        self.assertEqual(len(flagged), 1)
        self.assertIn("(Calabi-Yau, R[4](−4)) is not reproduced", flagged[0])
        self.assertIn("[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]", flagged[0])
        self.assertIn(flagged[0], emit_report(self.example2, "text"))

    def test_json_output(self):
        output = emit_report(self.example2)
        self.assertIn('"is_cy": false', output)
        self.assertIn('"gldim": 4', output)
        self.assertIn('"text": "_{φε^5}R[4](−4) with φε^5 = [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]"', output)
        self.assertIn('"status": "completed"', output)
        self.assertEqual(json.loads(output)["cap"], 6)

    def test_deterministic(self):
        again = analyze(builtin("example2"), cap=6)
        self.assertEqual(emit_report(again), emit_report(self.example2))
        self.assertEqual(emit_report(again, "text"), emit_report(self.example2, "text"))

    def test_quantum_plane_text(self):
        report = analyze(builtin("diagonal", {"qmatrix": [[1, 1], [1, 1]]}), cap=5)
        text = emit_report(report, "text")
        self.assertTrue(text.rstrip().endswith("CALABI-YAU: yes (dimension 2)"))
        self.assertIn("1/(1 - 2t + t^2)", text)

    def test_twisted_quantum_plane(self):
        report = analyze(builtin("diagonal", {"qmatrix": [[1, 2], ["1/2", 1]]}), cap=5)
        self.assertEqual(report.status, "completed")
        self.assertFalse(report.is_cy)
        self.assertEqual(report.data["descriptor"]["text"], "_{φε^3}R[2](−2) with φε^3 = [[2, 0], [0, 1/2]]")
        self.assertIn("CALABI-YAU: no (dimension 2)", emit_report(report, "text"))

    def test_mixed_quantum_space(self):
        report = analyze(builtin("diagonal", {"qmatrix": [[1, 2, 3], ["1/2", 1, "1/3"], ["1/3", 3, 1]]}), cap=5)
        self.assertEqual(report.data["homological"]["D"], [["6", "0", "0"], ["0", "1/6", "0"], ["0", "0", "1"]])
        self.assertEqual(report.data["homological"]["Q"], "-1")
        self.assertFalse(report.is_cy)

    def test_polynomial_ring(self):
        report = analyze(builtin("trivial1"), cap=4)
        self.assertTrue(report.is_cy)
        self.assertEqual(report.data["profile"]["gldim"], 1)
        self.assertEqual(report.data["homological"]["Q"], "-1")
        self.assertEqual(report.data["descriptor"]["text"], "R[1](−1)")

    def test_scaled_line(self):
        report = analyze(InputSpec("scaled", 1, ((Fraction(3),),)), cap=4)
        self.assertTrue(report.is_cy)
        self.assertEqual(report.data["validation"]["label"], "3")
        self.assertEqual(report.data["homological"]["Q"], "-1/3")

    def test_stop_after(self):
        report = analyze(builtin("example2"), cap=5, stop_after="validate")
        self.assertEqual(report.status, "completed")
        self.assertNotIn("quadratic", report.data)
        self.assertIn("rigid", emit_validation(report))


class RejectionTests(SimpleTestCase):
    def assertRejected(self, report, stage, code):
        self.assertEqual(report.status, "rejected")
        self.assertEqual(report.exit_code, 2)
        self.assertEqual(report.data["rejected_stage"], stage)
        self.assertEqual(report.data["error"]["code"], code)

    def test_zero_table(self):
        zero = tuple(tuple(Fraction(0) for _ in range(4)) for _ in range(4))
        report = analyze(InputSpec("zero", 2, zero), cap=4)
        self.assertRejected(report, "validate", "NotBraided")
        self.assertFalse(report.data["validation"]["rigid"])
        self.assertIn("REJECTED at stage validate: NotBraided", emit_report(report, "text"))

    def test_minus_identity_is_not_rigid(self):
        table = tuple(tuple(Fraction(-1 if r == c else 0) for c in range(4)) for r in range(4))
        report = analyze(InputSpec("minus", 2, table), cap=4)
        self.assertRejected(report, "validate", "NotRigid")

    def test_ambiguous_label(self):
        report = analyze(InputSpec("sign", 1, ((Fraction(-1),),)), cap=4)
        self.assertRejected(report, "validate", "LabelAmbiguous")

    def test_infinite_global_dimension(self):
        report = analyze(InputSpec("sign", 1, ((Fraction(-1),),), label=Fraction(2)), cap=4)
        self.assertRejected(report, "profile", "CapExceeded")
        self.assertEqual(report.data["profile"]["gldim"], "exceeds cap")

    def test_wrong_label(self):
        report = analyze(dataclasses.replace(builtin("example2"), label=Fraction(2)), cap=4)
        self.assertRejected(report, "validate", "NotHecke")

    def test_single_coefficient_mutations(self):
        for name, params in (("example2", {}), ("diagonal", {"qmatrix": [[1, 2], ["1/2", 1]]})):
            spec = builtin(name, params)
            cells = [(r, c) for r, row in enumerate(spec.table) for c, x in enumerate(row) if x]
            for r, c in cells:
                table = [list(row) for row in spec.table]
                table[r][c] *= 2
                mutated = dataclasses.replace(spec, table=tuple(tuple(row) for row in table))
                with self.subTest(family=name, cell=(r, c)):
                    report = analyze(mutated, cap=4)
                    self.assertEqual(report.status, "rejected")
                    self.assertEqual(report.data["rejected_stage"], "validate")
