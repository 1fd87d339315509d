"""
Reading braiding documents, running the analysis pipeline stage by stage and
rendering the resulting report as canonical JSON or as aligned text.
"""
import dataclasses
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd
from django.conf import settings
from django.core.exceptions import NON_FIELD_ERRORS

from .braiding import (
    dual_braiding,
    hecke_split,
    is_invertible,
    operator_on_V2,
    rigidity_check,
    validate_braid_equation,
    verify_label,
)
from .cy import cy_check
from .exceptions import (
    BadScalar,
    BraidcyError,
    DimensionMismatch,
    HypothesisFailed,
    InconsistentResult,
    InputRejected,
    NotBraided,
    NotRigid,
    ParseError,
)
from .families import CLAIMED_VERDICTS, builtin
from .forms import InputSpecForm
from .frt import (
    action_matrices,
    coassociativity_check,
    h_linearity_check,
    homological_matrix,
    rtt_check,
    scalar_action_check,
    stability_check,
)
from .linalg import Mat, image, intersect
from .nichols import (
    as_regularity_check,
    build_quadratic,
    default_cap,
    graded_profile,
    hilbert_identity,
    hilbert_series,
    koszul_check,
    require_finite,
)
from .oracle import nakayama_formula_deg1, run_oracle
from .utils import canonical_json, checksum, format_matrix, format_scalar

logger = logging.getLogger(__name__)

STAGES = (
    "validate",
    "quadratic",
    "profile",
    "koszul",
    "as_regularity",
    "homological",
    "calabi_yau",
    "oracle",
    "structural",
)

EXIT_CODES = {"completed": 0, "rejected": 2, "internal_error": 1}


# Input documents

def _line_of(text, key):
    needle = f'"{key}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return 1


def _reject_form(form, text):
    for name, errors in form.errors.as_data().items():
        for error in errors:
            message = " ".join(error.messages)
            params = error.params or {}
            if error.code == "BadScalar":
                raise BadScalar(params.get("token"))
            if error.code == "DimensionMismatch":
                raise DimensionMismatch(message, **params)
            field_name = "document" if name == NON_FIELD_ERRORS else name
            raise ParseError(_line_of(text, name), f"{field_name}: {message}")


def parse_document(document, text=""):
    if "family" in document:
        params = {key: value for key, value in document.items() if key != "family"}
        return builtin(document["family"], params)
    form = InputSpecForm(data=document)
    if not form.is_valid():
        _reject_form(form, text)
    return form.to_spec()


def read_source(source):
    if hasattr(source, "read"):
        return source.read()
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(0, f"cannot read {source}: {exc.strerror}")


def parse_input(source):
    """InputSpec from a path, "-" for stdin, or an open stream."""
    text = read_source(source)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg)
    if not isinstance(document, dict):
        raise ParseError(1, "the document must be a JSON object")
    spec = parse_document(document, text)
    logger.info("parsed %s: N=%s", spec.name or "input", spec.dimension)
    return spec


def with_options(spec, cap=None, convention=None):
    changes = {}
    if cap is not None:
        changes["cap"] = cap
    if convention is not None:
        changes["convention"] = convention
    return dataclasses.replace(spec, **changes) if changes else spec


def resolve_cap(spec, cap=None):
    if cap is not None:
        return cap
    if spec.cap is not None:
        return spec.cap
    config = settings.BRAIDCY
    return default_cap(
        spec.dimension,
        budget=config["TENSOR_BUDGET"],
        min_cap=config["MIN_CAP"],
        max_cap=config["MAX_CAP"],
    )


# Pipeline

@dataclass
class AnalysisReport:
    data: dict
    status: str = "completed"
    stage: str = ""
    error: BraidcyError = None
    artifacts: dict = field(default_factory=dict, repr=False)

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    @property
    def is_cy(self):
        return self.data.get("is_cy")

    @property
    def checksum(self):
        return self.data["input"]["checksum"]


def _validate(report, b, spec):
    validation = {
        "braid_equation": validate_braid_equation(b),
        "invertible": is_invertible(b),
        "rigid": rigidity_check(b),
    }
    report.data["validation"] = validation
    if not validation["braid_equation"]:
        raise NotBraided("the braid equation fails")
    if not validation["invertible"]:
        raise NotBraided("c is not invertible on V⊗V")
    if not validation["rigid"]:
        raise NotRigid("c^b is not invertible")
    q = verify_label(b, spec.label)
    validation["label"] = format_scalar(q)
    validation["label_source"] = "given" if spec.label is not None else "detected"
    report.artifacts["q"] = q


def _quadratic(report, b, cap):
    qd = build_quadratic(b, report.artifacts["q"], cap)
    report.data["quadratic"] = {
        "dim_I": qd.I.dim,
        "dim_I_perp": qd.I_perp.dim,
        "relations": format_matrix(qd.I.basis),
    }
    report.artifacts["qd"] = qd


def _profile(report, cap):
    gp = graded_profile(report.artifacts["qd"], cap)
    report.artifacts["gp"] = gp
    report.data["profile"] = {
        "dims_R": list(gp.dims_R),
        "dims_dual": list(gp.dims_dual),
        "gldim": gp.gldim_label,
        "hilbert_identity": hilbert_identity(gp),
        "hilbert_series": hilbert_series(gp),
    }
    require_finite(gp)


def _koszul(report):
    gp = report.artifacts["gp"]
    table = koszul_check(report.artifacts["qd"], gp)
    if not report.data["profile"]["hilbert_identity"]:
        raise InconsistentResult("Koszul complex exact but the Hilbert series identity fails")
    report.data["koszul"] = {"exact": table.exact, "checked_degrees": [0, gp.cap]}


def _as_regularity(report):
    regularity = as_regularity_check(report.artifacts["qd"], report.artifacts["gp"])
    report.data["as_regularity"] = {
        "regular": True,
        "window": list(regularity.window),
        "ext": [
            {"position": m, "internal_degree": t, "dim": dim}
            for (m, t), dim in sorted(regularity.ext.items(), key=lambda item: (item[0][1], item[0][0]))
        ],
    }


def _homological(report, b):
    gp = report.artifacts["gp"]
    af = action_matrices(b)
    hd = homological_matrix(af, gp.K[gp.gldim], report.artifacts["q"], gp.gldim)
    report.artifacts.update(af=af, hd=hd)
    report.data["homological"] = {
        "d": hd.d,
        "Q": format_scalar(hd.Q),
        "D": format_matrix(hd.D),
        "top_vector": [format_scalar(x) for x in hd.w],
    }


def _calabi_yau(report, b):
    hd, q = report.artifacts["hd"], report.artifacts["q"]
    nakayama = nakayama_formula_deg1(b, hd, q)
    result = cy_check(b, hd, q, nakayama)
    report.artifacts.update(nakayama=nakayama, cy=result)
    report.data.update(
        nakayama_deg1=format_matrix(nakayama),
        phi=format_matrix(result.phi),
        is_cy=result.is_cy,
        scalar_condition=result.scalar_condition,
        descriptor=result.descriptor.as_dict(),
    )


def _word_name(word):
    return "".join(f"v{letter + 1}*" for letter in word) or "1"


def _oracle(report, b):
    a = report.artifacts
    result = run_oracle(a["qd"], a["gp"], b, a["hd"])
    a["oracle"] = result
    report.data["oracle"] = {
        "agrees": result.agrees,
        "Q": format_scalar(result.Q),
        "top_word": _word_name(result.tables.top_word),
        "bases": [[_word_name(w) for w in words] for words in result.tables.bases],
        "gram": {str(k): format_matrix(block) for k, block in enumerate(result.form.blocks)},
        "eta": {str(k): format_matrix(block) for k, block in enumerate(result.eta)},
        "modular": result.modular,
    }
    if not result.agrees:
        raise InconsistentResult("brute-force Nakayama automorphism differs from the closed formula")


def structural_checks(b, qd, gp, af, hd):
    """Runtime cross-checks of the whole pipeline; every entry must hold."""
    N = b.dimension
    q = Fraction(qd.q)
    d = require_finite(gp)
    C = operator_on_V2(b)
    split = hecke_split(b, q)
    dual = dual_braiding(b, q)
    try:
        dual_label = verify_label(dual, 1 / q) == 1 / q
    except HypothesisFailed:
        dual_label = False
    checks = {
        "braid_equation": validate_braid_equation(b),
        "hecke_direct_sum": split.ker_plus.dim + split.ker_q.dim == N * N
        and intersect([split.ker_plus, split.ker_q]).is_zero(),
        "ker_plus_is_image": split.ker_plus == image(C - Mat.identity(N * N).scale(q)),
        "dual_label": dual_label,
        "dual_relations": dual_label and hecke_split(dual, 1 / q).ker_plus == qd.I_perp,
        "dual_braid_equation": validate_braid_equation(dual),
        "rtt": rtt_check(b, af),
        "h_linearity": h_linearity_check(b, af),
        "coassociativity": coassociativity_check(af, 1, 1),
        "i_stability": stability_check(af, qd.I, 2),
        "k_stability": all(
            stability_check(af, gp.K[m], m) for m in range(1, min(d + 1, gp.cap) + 1)
        ),
        "scalar_action": scalar_action_check(af, gp.K[d], hd),
        "frobenius_symmetry": all(gp.dims_dual[k] == gp.dims_dual[d - k] for k in range(d + 1)),
    }
    return checks


def _structural(report, b):
    a = report.artifacts
    checks = structural_checks(b, a["qd"], a["gp"], a["af"], a["hd"])
    report.data["structural_checks"] = checks
    failed = sorted(name for name, holds in checks.items() if not holds)
    if failed:
        raise InconsistentResult(f"structural checks failed: {', '.join(failed)}")


def _render_rows(rows):
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in rows) + "]"


def claimed_verdict_caveat(data):
    """Caveat line when a built-in family's stated verdict differs from the computed one."""
    family = (data["input"].get("family") or {}).get("family")
    claimed = CLAIMED_VERDICTS.get(family)
    if claimed is None or "oracle" not in data:
        return None
    if data["is_cy"] == claimed["is_cy"] and data["descriptor"]["text"] == claimed["descriptor"]:
        return None
    verdict = "Calabi-Yau" if claimed["is_cy"] else "not Calabi-Yau"
    return (
        f"{family}: the stated verdict ({verdict}, {claimed['descriptor']}) is not reproduced; "
        f"the oracle's Nakayama automorphism on V* is {_render_rows(data['oracle']['eta']['1'])}, "
        f"agreeing with the closed formula, so φ = {_render_rows(data['phi'])} "
        f"and the dualizing complex is {data['descriptor']['text']}"
    )


def _echo(spec):
    return {
        "name": spec.name,
        "dimension": spec.dimension,
        "label": None if spec.label is None else format_scalar(spec.label),
        "convention": spec.convention,
        "family": spec.family,
        "checksum": checksum(spec.to_document()),
    }


def analyze(spec, cap=None, version=None, stop_after=None):
    """
    Runs the stages in order. A stage that rejects the input ends the run with
    status "rejected"; completed stages stay in the report.
    """
    cap = resolve_cap(spec, cap)
    version = version or settings.BRAIDCY["REPORT_VERSION"]
    data = {
        "report_version": version,
        "input": _echo(spec),
        "cap": cap,
        "caveats": [
            "Noetherian: assumed",
            f"cap: {cap}; Koszul and AS-regularity are verified up to internal degree {cap}",
            "twist exponent: ε^(d+1) on R_m acts as (−1)^(m(d+1))",
        ],
    }
    report = AnalysisReport(data)
    b = spec.braiding()
    runners = {
        "validate": lambda: _validate(report, b, spec),
        "quadratic": lambda: _quadratic(report, b, cap),
        "profile": lambda: _profile(report, cap),
        "koszul": lambda: _koszul(report),
        "as_regularity": lambda: _as_regularity(report),
        "homological": lambda: _homological(report, b),
        "calabi_yau": lambda: _calabi_yau(report, b),
        "oracle": lambda: _oracle(report, b),
        "structural": lambda: _structural(report, b),
    }
    try:
        for stage in STAGES:
            report.stage = stage
            logger.info("stage %s: %s", stage, spec.name or "input")
            runners[stage]()
            if stage == stop_after:
                break
    except (InputRejected, HypothesisFailed) as exc:
        logger.warning("input rejected at stage %s: %s", report.stage, exc.message)
        report.status, report.error = "rejected", exc
    except InconsistentResult as exc:
        logger.error("inconsistent result at stage %s: %s", report.stage, exc.message)
        report.status, report.error = "internal_error", exc
    caveat = claimed_verdict_caveat(data)
    if caveat:
        logger.warning("%s", caveat)
        data["caveats"].append(caveat)
    data["status"] = report.status
    if report.error is not None:
        data["rejected_stage"] = report.stage
        data["error"] = report.error.as_dict()
    return report


def save_report(report):
    from .models import AnalysisRecord

    record, created = AnalysisRecord.objects.update_or_create(
        checksum=report.checksum,
        cap=report.data["cap"],
        report_version=report.data["report_version"],
        defaults={
            "name": report.data["input"]["name"],
            "status": report.status,
            "is_cy": report.is_cy,
            "gldim": report.artifacts["gp"].gldim if "gp" in report.artifacts else None,
            "rejected_stage": report.data.get("rejected_stage", ""),
            "report": canonical_json(report.data),
        },
    )
    logger.info("%s analysis record %s", "created" if created else "updated", record.pk)
    return record


# Rendering

def _matrix_frame(rows, prefix="v"):
    labels = [f"{prefix}{k + 1}" for k in range(len(rows))]
    columns = [f"{prefix}{k + 1}" for k in range(len(rows[0]))] if rows else []
    return pd.DataFrame(rows, index=labels, columns=columns).to_string()


def _summary(data):
    summary = {"input": data["input"]["name"] or "(unnamed)", "N": data["input"]["dimension"]}
    summary["convention"] = data["input"]["convention"]
    summary["cap"] = data["cap"]
    summary["status"] = data["status"]
    validation = data.get("validation", {})
    for key in ("braid_equation", "invertible", "rigid"):
        if key in validation:
            summary[key.replace("_", " ")] = "yes" if validation[key] else "no"
    if "label" in validation:
        summary["label q"] = f"{validation['label']} ({validation['label_source']})"
    if "quadratic" in data:
        summary["dim I"] = data["quadratic"]["dim_I"]
        summary["dim I^⊥"] = data["quadratic"]["dim_I_perp"]
    if "profile" in data:
        summary["global dimension"] = data["profile"]["gldim"]
        if data["profile"]["hilbert_series"]:
            summary["Hilbert series"] = data["profile"]["hilbert_series"]
    if "koszul" in data:
        low, high = data["koszul"]["checked_degrees"]
        summary["Koszul"] = f"exact in internal degrees {low}..{high}"
    if "as_regularity" in data:
        low, high = data["as_regularity"]["window"]
        summary["AS-regular"] = f"Ext concentrated at position {high}, internal degree {high} (window {low}..{high})"
    if "homological" in data:
        summary["quantum label Q"] = data["homological"]["Q"]
    if "descriptor" in data:
        summary["dualizing complex"] = data["descriptor"]["text"]
    if "oracle" in data:
        summary["oracle"] = "agrees" if data["oracle"]["agrees"] else "DISAGREES"
    return pd.Series(summary, dtype=object).to_string()


def render_text(data):
    parts = [f"braidcy report {data['report_version']}", _summary(data)]
    if "profile" in data:
        profile = data["profile"]
        frame = pd.DataFrame(
            [profile["dims_R"], profile["dims_dual"]],
            index=["dim R_n", "dim R^!_n"],
            columns=range(len(profile["dims_R"])),
        )
        parts.append("graded dimensions\n" + frame.to_string())
    if "homological" in data:
        parts.append("homological matrix D\n" + _matrix_frame(data["homological"]["D"]))
    if "phi" in data:
        parts.append("φ on V\n" + _matrix_frame(data["phi"]))
        parts.append("Nakayama automorphism on V*\n" + _matrix_frame(data["nakayama_deg1"], "v*"))
    if "oracle" in data:
        for k, block in sorted(data["oracle"]["eta"].items(), key=lambda item: int(item[0])):
            parts.append(f"η in degree {k}\n" + _oracle_frame(block, data["oracle"]["bases"][int(k)]))
    if "structural_checks" in data:
        checks = pd.Series({k: "pass" if v else "FAIL" for k, v in data["structural_checks"].items()})
        parts.append("structural checks\n" + checks.to_string())
    parts.append("caveats\n" + "\n".join(f"  {line}" for line in data["caveats"]))
    if data["status"] == "completed" and "is_cy" in data:
        verdict = "yes" if data["is_cy"] else "no"
        parts.append(f"CALABI-YAU: {verdict} (dimension {data['homological']['d']})")
    elif data["status"] == "completed":
        parts.append("analysis stopped before the Calabi-Yau stage")
    else:
        error = data["error"]
        parts.append(f"REJECTED at stage {data['rejected_stage']}: {error['code']}: {error['message']}")
    return "\n\n".join(parts) + "\n"


def _oracle_frame(rows, words):
    if not rows:
        return "(empty)"
    return pd.DataFrame(rows, index=words, columns=words).to_string()


def render_oracle_text(data):
    parts = [f"braidcy oracle {data['report_version']}", _summary(data)]
    oracle = data.get("oracle")
    if oracle:
        for k, block in sorted(oracle["gram"].items(), key=lambda item: int(item[0])):
            rows_words = oracle["bases"][int(k)]
            cols_words = oracle["bases"][len(oracle["bases"]) - 1 - int(k)]
            frame = pd.DataFrame(block, index=rows_words, columns=cols_words) if block else None
            parts.append(f"Frobenius form, degrees {k} x complement\n" + ("(empty)" if frame is None else frame.to_string()))
        for k, block in sorted(oracle["eta"].items(), key=lambda item: int(item[0])):
            parts.append(f"η in degree {k}\n" + _oracle_frame(block, oracle["bases"][int(k)]))
        modular = pd.Series(oracle["modular"], dtype=object)
        parts.append("modular function\n" + modular.to_string())
    if data["status"] != "completed":
        error = data["error"]
        parts.append(f"REJECTED at stage {data['rejected_stage']}: {error['code']}: {error['message']}")
    return "\n\n".join(parts) + "\n"


ORACLE_KEYS = ("cap", "caveats", "error", "input", "oracle", "rejected_stage", "report_version", "status")


def emit_report(report, fmt="json", oracle_only=False):
    data = report.data
    if oracle_only:
        data = {key: value for key, value in data.items() if key in ORACLE_KEYS}
    if fmt == "json":
        return canonical_json(data) + "\n"
    if fmt == "text":
        return render_oracle_text(data) if oracle_only else render_text(data)
    raise ValueError(f"unknown format {fmt!r}")


def emit_validation(report, fmt="json"):
    keys = ("error", "input", "rejected_stage", "report_version", "status", "validation")
    data = {key: value for key, value in report.data.items() if key in keys}
    if fmt == "json":
        return canonical_json(data) + "\n"
    lines = [f"braidcy validation {data['report_version']}", _summary(report.data)]
    if data["status"] != "completed":
        error = data["error"]
        lines.append(f"REJECTED at stage {data['rejected_stage']}: {error['code']}: {error['message']}")
    return "\n\n".join(lines) + "\n"
