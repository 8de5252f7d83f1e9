"""Scenario configuration, the end-to-end pipeline, and report documents."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any

from . import __version__
from .basefield import BaseField, resolve_prime
from .classfield import (
    LocalType,
    OrderGenusSpec,
    selectivity_report,
    validate_genus,
)
from .classgroup import class_group
from .csa import AlgebraSpec, local_index
from .errors import OracleNotApplicable, ValidationError
from .extension import RelativeExtension, discriminant, maximality_check, splitting_type

SCHEMA = "selectivity-report/v1"
_CONFIG_KEYS = {
    "base_discriminant",
    "min_poly",
    "degree",
    "invariants",
    "order_local_types",
    "sampling_bound",
    "oracle",
    "real_invariant",
    "seed",
}


def parse_fraction(x) -> Fraction:
    """Accept ["num", "den"], [num, den], "num/den" or an integer."""
    try:
        if isinstance(x, (list, tuple)):
            num, den = x
            return Fraction(int(num), int(den))
        if isinstance(x, bool):
            raise TypeError
        if isinstance(x, (int, str)):
            return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        pass
    raise ValidationError(f"cannot read {x!r} as an exact fraction")


def fraction_pair(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def _coefficient(c) -> list[int]:
    if isinstance(c, bool):
        raise ValidationError(f"bad polynomial coefficient {c!r}")
    if isinstance(c, int):
        return [c, 0]
    if isinstance(c, (list, tuple)) and len(c) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in c):
        return [c[0], c[1]]
    raise ValidationError(f"polynomial coefficients are integers or [a, b] pairs meaning a + b*w, got {c!r}")


def _prime_spec(spec) -> dict:
    if isinstance(spec, int) and not isinstance(spec, bool):
        return {"p": spec}
    if isinstance(spec, dict) and "p" in spec and set(spec) <= {"p", "root"}:
        out = {"p": int(spec["p"])}
        if spec.get("root") is not None:
            out["root"] = spec["root"] if spec["root"] == "ramified" else int(spec["root"])
        return out
    raise ValidationError(f"malformed prime specification {spec!r}")


@dataclass
class ScenarioConfig:
    base_discriminant: int
    min_poly: list[list[int]]
    degree: int
    invariants: list[tuple[dict, Fraction]] = field(default_factory=list)
    order_local_types: list[tuple[dict, LocalType]] = field(default_factory=list)
    sampling_bound: int = 1000
    oracle: bool = False
    real_invariant: Fraction = Fraction(0)
    seed: int = 0

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ScenarioConfig":
        if not isinstance(d, dict):
            raise ValidationError("configuration must be a JSON object")
        unknown = set(d) - _CONFIG_KEYS
        if unknown:
            raise ValidationError(f"unknown configuration keys: {sorted(unknown)}")
        for key in ("base_discriminant", "min_poly", "degree"):
            if key not in d:
                raise ValidationError(f"missing configuration key {key!r}")
        ints = {}
        for key, default in (("base_discriminant", None), ("degree", None), ("sampling_bound", 1000), ("seed", 0)):
            v = d.get(key, default)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValidationError(f"{key} must be an integer, got {v!r}")
            ints[key] = v
        if not isinstance(d["min_poly"], list):
            raise ValidationError("min_poly must be a list of coefficients, constant term first")
        invariants = []
        for item in d.get("invariants", []):
            try:
                invariants.append((_prime_spec(item["prime"]), parse_fraction(item["invariant"])))
            except (KeyError, TypeError):
                raise ValidationError(f"malformed invariant entry {item!r}") from None
        local_types = []
        for item in d.get("order_local_types", []):
            try:
                local_types.append((_prime_spec(item["prime"]), LocalType.from_dict(item["type"])))
            except (KeyError, TypeError):
                raise ValidationError(f"malformed local type entry {item!r}") from None
        oracle = d.get("oracle", False)
        if not isinstance(oracle, bool):
            raise ValidationError("oracle must be true or false")
        return cls(
            base_discriminant=ints["base_discriminant"],
            min_poly=[_coefficient(c) for c in d["min_poly"]],
            degree=ints["degree"],
            invariants=invariants,
            order_local_types=local_types,
            sampling_bound=ints["sampling_bound"],
            oracle=oracle,
            real_invariant=parse_fraction(d.get("real_invariant", 0)),
            seed=ints["seed"],
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "base_discriminant": self.base_discriminant,
            "min_poly": [list(c) for c in self.min_poly],
            "degree": self.degree,
            "invariants": [{"prime": dict(p), "invariant": fraction_pair(r)} for p, r in self.invariants],
            "order_local_types": [{"prime": dict(p), "type": t.to_dict()} for p, t in self.order_local_types],
            "sampling_bound": self.sampling_bound,
            "oracle": self.oracle,
            "real_invariant": fraction_pair(self.real_invariant),
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, text: str) -> "ScenarioConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"configuration is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def load(cls, path) -> "ScenarioConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_json(fh.read())
        except OSError as exc:
            raise ValidationError(f"cannot read configuration {path}: {exc}") from None

    # -- resolution into domain objects

    def build(self) -> tuple[OrderGenusSpec, RelativeExtension]:
        k = BaseField(self.base_discriminant)
        ext = RelativeExtension.from_pairs(k, self.min_poly)
        invariants = tuple((resolve_prime(k, p), r) for p, r in self.invariants)
        algebra = AlgebraSpec(k, self.degree, invariants, self.real_invariant)
        local = tuple((resolve_prime(k, p), t) for p, t in self.order_local_types)
        spec = OrderGenusSpec(algebra, local)
        validate_genus(spec)
        return spec, ext


@dataclass
class ReportDocument:
    """Machine-readable report: a JSON object with a versioned schema id."""

    data: dict[str, Any]

    @property
    def schema(self) -> str:
        return self.data["schema"]

    def __getitem__(self, key):
        return self.data[key]

    def canonical(self) -> dict[str, Any]:
        """The report without its timestamp, for comparing runs."""
        return {k: v for k, v in self.data.items() if k != "generated_at"}

    def to_json(self, canonical: bool = False) -> str:
        return json.dumps(self.canonical() if canonical else self.data, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        if not isinstance(data, dict) or not str(data.get("schema", "")).startswith("selectivity-report/"):
            raise ValidationError("not a selectivity report")
        return cls(data)

    @property
    def ratio(self) -> Fraction:
        return parse_fraction(self.data["ratio"])

    @property
    def oracle_mismatch(self) -> bool:
        oracle = self.data.get("oracle")
        return bool(oracle) and oracle.get("verdict") == "mismatch"


def _forms(xs) -> list[str]:
    return [str(x) for x in xs]


def _poly_text(pairs) -> str:
    terms = []
    n = len(pairs) - 1
    for i in range(n, -1, -1):
        a, b = pairs[i]
        if a == 0 and b == 0:
            continue
        if b == 0:
            coeff = str(a)
        elif a == 0:
            coeff = f"{b}w"
        else:
            coeff = f"({a}{'+' if b > 0 else '-'}{abs(b)}w)"
        if i == 0:
            terms.append(coeff)
            continue
        mono = "x" if i == 1 else f"x^{i}"
        if coeff == "1":
            terms.append(mono)
        elif coeff == "-1":
            terms.append(f"-{mono}")
        else:
            terms.append(f"{coeff}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def run(config: ScenarioConfig, *, check_oracle: bool | None = None) -> ReportDocument:
    """Validate, decide embeddability, compute the class field and the selectivity counts."""
    spec, ext = config.build()
    k = spec.field
    seed = config.seed
    group = class_group(k)
    n = spec.degree

    local_rows = []
    for P, r in spec.algebra.finite_invariants:
        li = local_index(spec.algebra, P)
        datum = splitting_type(ext, P, seed)
        row = {
            "prime": P.label(),
            "prime_spec": P.spec(),
            "invariant": fraction_pair(r),
            "d_v": li.d_v,
            "m_v": li.m_v,
            "splitting": [[e, f] for e, f in datum.factors],
            "certified": datum.certified,
        }
        row["embeddable"] = True if li.d_v == 1 else (
            all(d % li.d_v == 0 for d in datum.local_degrees) if datum.certified else None
        )
        local_rows.append(row)

    report = selectivity_report(spec, ext, config.sampling_bound, seed)
    S = report.stabilizer.subgroup
    N = report.norm
    d = discriminant(ext)

    data: dict[str, Any] = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "generated_at": _timestamp(),
        "status": "ok",
        "config": config.to_dict(),
        "field": {
            "label": str(k),
            "discriminant": k.discriminant,
            "class_number": group.order,
            "elementary_divisors": list(group.elementary_divisors),
            "generators": _forms(group.generators),
        },
        "extension": {
            "polynomial": _poly_text(config.min_poly),
            "degree": ext.degree,
            "discriminant": [fraction_pair(c) for c in d.coords()],
            "uncertified_primes": [P.label() for P in maximality_check(ext, seed)],
        },
        "algebra": {
            "degree": n,
            "is_matrix_algebra": spec.algebra.is_matrix_algebra,
            "real_invariant": fraction_pair(spec.algebra.real_invariant),
        },
        "local_embeddability": local_rows,
        "stabilizer": {
            "order": S.order,
            "generators": _forms(S.generators()),
            "derivation": [{"prime": P.label(), "exponent": m} for P, m in report.stabilizer.derivation],
        },
        "norm_subgroup": {
            "order": N.subgroup.order,
            "index": N.index,
            "generators": _forms(N.subgroup.generators()),
            "sampling_bound": N.sampling_bound,
            "stabilized": N.stabilized,
            "last_growth": N.last_growth,
            "skipped": [P.label() for P in N.skipped],
        },
        "genus_class_count": report.genus_class_count,
        "class_field_degree": report.class_field_degree,
        "selectivity_degree": report.selectivity_degree,
        "embeddable_class_count": report.embeddable_class_count,
        "ratio": fraction_pair(report.ratio),
        "exactness": report.exactness,
        "diagnostics": list(report.diagnostics),
        "division_primes": [P.label() for P in spec.algebra.ramified_primes if local_index(spec.algebra, P).d_v == n],
        "genus_cosets": [_forms(cs) for cs in report.genus_cosets],
        "embeddable_cosets": [_forms(cs) for cs in report.embeddable_cosets],
        "oracle": None,
    }

    want_oracle = config.oracle if check_oracle is None else check_oracle
    if want_oracle:
        data["oracle"] = _oracle(spec, ext, report, seed)
    return ReportDocument(data)


def _oracle(spec, ext, report, seed) -> dict:
    from .steinitz import cross_check, embeddable_steinitz_set, oracle_applicable

    try:
        oracle_applicable(spec)
    except OracleNotApplicable as exc:
        return {"verdict": "not_applicable", "reason": exc.message}
    oracle_set = embeddable_steinitz_set(ext, spec.degree, seed=seed)
    return cross_check(report, oracle_set, ext, seed).to_dict()


def error_document(exc) -> ReportDocument:
    return ReportDocument(
        {
            "schema": SCHEMA,
            "tool_version": __version__,
            "generated_at": _timestamp(),
            "status": "error",
            "error": exc.to_dict(),
        }
    )


def _classes_phrase(count: int, total: int) -> str:
    verb = "admits" if count == 1 else "admit"
    noun = "class" if total == 1 else "classes"
    return f"{count} of {total} conjugacy {noun} {verb} the embedding"


def explain(report: ReportDocument) -> str:
    """Human-readable narrative of a report."""
    r = report.data
    if r.get("status") == "error":
        e = r["error"]
        where = f" at {e['prime']}" if e.get("prime") else ""
        return f"error ({e['kind']}){where}: {e['message']}\n"

    lines = []
    oracle = r.get("oracle")
    if oracle and oracle.get("verdict") == "mismatch":
        lines.append("*** ORACLE MISMATCH: the Steinitz-class oracle disagrees with the class-field engine ***")
        lines.append(f"    engine cosets: {oracle['engine_cosets']}")
        lines.append(f"    oracle cosets: {oracle['oracle_cosets']}")
        lines.append("")

    f = r["field"]
    divs = " x ".join(f"C{d}" for d in f["elementary_divisors"]) or "trivial"
    lines.append(f"Selectivity report ({r['schema']}, tool {r['tool_version']})")
    lines.append(f"Base field k = {f['label']}, Cl(k) = {divs}, h = {f['class_number']}")
    if f["generators"]:
        lines.append(f"  class group generators: {', '.join(f['generators'])}")
    e = r["extension"]
    lines.append(f"Extension K = k[x]/({e['polynomial']}), [K:k] = {e['degree']}")
    if e["uncertified_primes"]:
        lines.append(f"  o_k[x]/(f) not maximal at: {', '.join(e['uncertified_primes'])}")

    n = r["algebra"]["degree"]
    lines.append("")
    lines.append("Main criterion: K embeds in A iff d_v divides [K_w : k_v] for every place w | v.")
    if not r["local_embeddability"]:
        lines.append(f"  A = M_{n}(k): every local index is 1, so K embeds.")
    for row in r["local_embeddability"]:
        inv = "/".join(row["invariant"])
        split = ", ".join(f"e={a} f={b}" for a, b in row["splitting"])
        verdict = {True: "embeds", False: "does not embed", None: "undetermined"}[row["embeddable"]]
        lines.append(f"  {row['prime']}: invariant {inv}, d_v = {row['d_v']}, m_v = {row['m_v']}; splitting [{split}] -> {verdict}")

    s = r["stabilizer"]
    lines.append("")
    lines.append(f"Stabilizer image S = <Cl^{n}, local norm classes>, order {s['order']}")
    if s["generators"]:
        lines.append(f"  generators: {', '.join(s['generators'])}")
    for item in s["derivation"]:
        lines.append(f"  {item['prime']} contributes its class to the power {item['exponent']}")
    lines.append(f"Class field k(Gamma): [k(Gamma) : k] = [Cl : S] = {r['class_field_degree']} (genus class count {r['genus_class_count']})")
    ns = r["norm_subgroup"]
    state = "stabilized" if ns["stabilized"] else "NOT stabilized"
    lines.append(f"Norm subgroup N: index {ns['index']} in Cl(k), sampling bound {ns['sampling_bound']}, {state}")
    if ns["generators"]:
        lines.append(f"  generators: {', '.join(ns['generators'])}")
    lines.append(f"Selectivity degree [K cap k(Gamma) : k] = [Cl : N S] = {r['selectivity_degree']}")

    lines.append("")
    ratio = "/".join(r["ratio"])
    count, total = r["embeddable_class_count"], r["genus_class_count"]
    if r["exactness"] == "Exact":
        lines.append(f"Ratio theorem: {_classes_phrase(count, total)} (ratio {ratio}, exact).")
    else:
        lines.append(
            f"Ratio theorem (lower bound only): o_K embeds in at least {count} of {total} conjugacy classes "
            f"(at least [k(Gamma) : K cap k(Gamma)] of them); ratio >= {ratio}."
        )
    if r["division_primes"]:
        lines.append(
            f"Totally ramified case: A is a division algebra at {', '.join(r['division_primes'])}, "
            "so o_K embeds into every class of the genus."
        )
    else:
        lines.append("Totally ramified case: not applicable (no prime with local index n).")
    if r["embeddable_cosets"]:
        lines.append(f"  embeddable classes: {' | '.join(', '.join(cs) for cs in r['embeddable_cosets'])}")
    for d in r["diagnostics"]:
        lines.append(f"  note: {d}")

    if oracle:
        lines.append("")
        if oracle["verdict"] == "match":
            lines.append(f"Steinitz oracle: match (orientation {oracle['orientation']}, st(o_K) = {oracle['steinitz_ring_of_integers']})")
        elif oracle["verdict"] == "not_applicable":
            lines.append(f"Steinitz oracle: not applicable ({oracle['reason']})")
        else:
            lines.append("Steinitz oracle: MISMATCH (see top of report)")
    return "\n".join(lines) + "\n"
