from dataclasses import dataclass, field
from fractions import Fraction

from django import forms
from django.core.exceptions import ValidationError

from .braiding import Braiding
from .exceptions import BadScalar
from .linalg import Mat
from .utils import format_scalar, parse_scalar

CONVENTIONS = [("standard", "rows are inputs"), ("transpose", "rows are outputs")]


@dataclass(frozen=True)
class InputSpec:
    name: str
    dimension: int
    table: tuple
    label: Fraction = None
    cap: int = None
    convention: str = "standard"
    family: dict = field(default=None, compare=False)

    def coefficient_table(self):
        """Rows are input pairs whatever convention the document was written in."""
        size = self.dimension ** 2
        m = Mat.from_dict(
            size,
            size,
            {(r, c): value for r, row in enumerate(self.table) for c, value in enumerate(row) if value},
        )
        return m.T if self.convention == "transpose" else m

    def braiding(self):
        return Braiding(self.dimension, self.coefficient_table(), self.label, self.name)

    def to_document(self):
        document = {
            "name": self.name,
            "dimension": self.dimension,
            "braiding": [[format_scalar(x) for x in row] for row in self.table],
        }
        if self.label is not None:
            document["label"] = format_scalar(self.label)
        if self.cap is not None:
            document["cap"] = self.cap
        if self.convention != "standard":
            document["convention"] = self.convention
        return document


def scalar_or_error(token):
    try:
        return parse_scalar(token)
    except BadScalar:
        raise ValidationError("not an exact rational: %(token)s", code="BadScalar", params={"token": token})


class InputSpecForm(forms.Form):
    name = forms.CharField(required=False, max_length=200)
    dimension = forms.IntegerField(min_value=1)
    label = forms.CharField(required=False)
    braiding = forms.JSONField()
    cap = forms.IntegerField(required=False, min_value=2)
    convention = forms.ChoiceField(choices=CONVENTIONS, required=False)

    def clean_label(self):
        token = self.cleaned_data.get("label")
        if token in (None, ""):
            return None
        return scalar_or_error(token)

    def clean_braiding(self):
        table = self.cleaned_data["braiding"]
        if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
            raise ValidationError("braiding must be a list of rows", code="ParseError")
        return tuple(tuple(scalar_or_error(token) for token in row) for row in table)

    def clean(self):
        cleaned = super().clean()
        N = cleaned.get("dimension")
        table = cleaned.get("braiding")
        if N is None or table is None:
            return cleaned
        size = N * N
        if len(table) != size or any(len(row) != size for row in table):
            widths = sorted({len(row) for row in table})
            raise ValidationError(
                "dimension %(N)s needs a %(size)sx%(size)s table, got %(rows)s rows of widths %(widths)s",
                code="DimensionMismatch",
                params={"N": N, "size": size, "rows": len(table), "widths": widths},
            )
        return cleaned

    def to_spec(self, name=""):
        data = self.cleaned_data
        return InputSpec(
            name=data.get("name") or name,
            dimension=data["dimension"],
            table=data["braiding"],
            label=data.get("label"),
            cap=data.get("cap"),
            convention=data.get("convention") or "standard",
        )


class FamilyParamsForm(forms.Form):
    """Parameters of a built-in family; which keys a family accepts is decided by the caller."""

    name = forms.CharField(required=False, max_length=200)
    qmatrix = forms.JSONField(required=False)
    cap = forms.IntegerField(required=False, min_value=2)
