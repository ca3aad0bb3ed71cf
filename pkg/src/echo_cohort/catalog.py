"""Condition catalog: the labeled universe of statements the corpus draws from.

A catalog is a tree of conditions -> subcategories -> statement variants.
The same variant string may be listed under several subcategories; such
compound statements assert all of their subcategories at once. Subcategories
for the LVEF condition may carry a numeric generation rule (``lvef_template``)
that the corpus generator instantiates into parseable percentage mentions.

Catalog files are versioned text: a fixed header line, then a YAML body.
"""

from __future__ import annotations

import hashlib
import importlib.resources
from dataclasses import dataclass, field

import yaml

from .errors import CatalogError
from .text import normalize_statement

FORMAT_HEADER = "echo-corpus v1"

DEFAULT_CATALOG_RESOURCE = "default_catalog.txt"


@dataclass(frozen=True)
class LvefTemplate:
    """Numeric generation rule for an LVEF subcategory.

    Generated mentions fall inside [lo, hi] percent; point_fraction of them
    are single values, the rest are sub-ranges of the band.
    """

    lo: float
    hi: float
    point_fraction: float = 0.7


@dataclass(frozen=True)
class SubcategoryDef:
    id: str
    condition: str
    label: str
    variants: tuple[str, ...]
    lvef_template: LvefTemplate | None = None


@dataclass
class ConditionDef:
    name: str
    ood: bool
    subcategories: list[SubcategoryDef] = field(default_factory=list)


@dataclass
class ConditionCatalog:
    name: str
    conditions: list[ConditionDef]

    def __post_init__(self) -> None:
        self._by_id = {
            sub.id: sub for cond in self.conditions for sub in cond.subcategories
        }
        variant_ids: dict[str, tuple[str, ...]] = {}
        for cond in self.conditions:
            for sub in cond.subcategories:
                for variant in sub.variants:
                    key = normalize_statement(variant)
                    ids = variant_ids.get(key, ())
                    if sub.id not in ids:
                        variant_ids[key] = ids + (sub.id,)
        self._variant_ids = variant_ids

    def categorize(self, statement: str) -> tuple[str, ...]:
        """Subcategory ids asserted by a catalog statement, in catalog order.

        Compound statements return several ids; text outside the catalog
        returns the empty tuple rather than raising, because ingested
        reports legitimately contain statements we have no label for.
        """
        return self._variant_ids.get(normalize_statement(statement), ())

    def subcategory(self, sub_id: str) -> SubcategoryDef:
        try:
            return self._by_id[sub_id]
        except KeyError:
            raise CatalogError(f"unknown subcategory id: {sub_id!r}") from None

    def subcategory_ids(self) -> list[str]:
        return list(self._by_id)

    def ood_condition_names(self) -> list[str]:
        return [c.name for c in self.conditions if c.ood]

    def ood_subcategory_ids(self) -> list[str]:
        return [s.id for c in self.conditions if c.ood for s in c.subcategories]

    def iter_subcategories(self):
        for cond in self.conditions:
            yield from cond.subcategories

    def content_hash(self) -> str:
        """Stable digest binding indexes to the exact catalog they were built from."""
        return hashlib.sha256(dump_catalog(self).encode("utf-8")).hexdigest()


_SUB_KEYS = {"id", "label", "variants", "lvef_template"}
_COND_KEYS = {"name", "ood", "subcategories"}
_TEMPLATE_KEYS = {"lo", "hi", "point_fraction"}


def _parse_lvef_template(raw: object, sub_id: str) -> LvefTemplate | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise CatalogError(f"subcategory {sub_id!r}: lvef_template must be a mapping")
    unknown = set(raw) - _TEMPLATE_KEYS
    if unknown:
        raise CatalogError(
            f"subcategory {sub_id!r}: unknown lvef_template field {sorted(unknown)[0]!r}"
        )
    try:
        lo = float(raw["lo"])
        hi = float(raw["hi"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(
            f"subcategory {sub_id!r}: lvef_template needs numeric lo and hi"
        ) from exc
    frac = float(raw.get("point_fraction", 0.7))
    if not (0.0 <= lo <= hi <= 100.0):
        raise CatalogError(
            f"subcategory {sub_id!r}: lvef_template bounds must satisfy 0 <= lo <= hi <= 100"
        )
    if not (0.0 <= frac <= 1.0):
        raise CatalogError(
            f"subcategory {sub_id!r}: lvef_template point_fraction out of [0, 1]"
        )
    return LvefTemplate(lo=lo, hi=hi, point_fraction=frac)


def parse_catalog(text: str) -> ConditionCatalog:
    """Parse and validate catalog text. Raises CatalogError naming the bad field."""
    lines = text.split("\n", 1)
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise CatalogError(
            f"catalog header: expected {FORMAT_HEADER!r}, got {lines[0].strip()!r}"
        )
    if len(lines) < 2 or not lines[1].strip():
        raise CatalogError("catalog body: empty")
    try:
        body = yaml.safe_load(lines[1])
    except yaml.YAMLError as exc:
        raise CatalogError(f"catalog body: invalid YAML ({exc})") from exc
    if not isinstance(body, dict):
        raise CatalogError("catalog body: expected a mapping")
    if body.get("kind") != "catalog":
        raise CatalogError(f"catalog kind: expected 'catalog', got {body.get('kind')!r}")
    unknown = set(body) - {"kind", "name", "conditions"}
    if unknown:
        raise CatalogError(f"catalog: unknown top-level field {sorted(unknown)[0]!r}")
    name = body.get("name")
    if not isinstance(name, str) or not name:
        raise CatalogError("catalog name: missing or empty")
    raw_conditions = body.get("conditions")
    if not isinstance(raw_conditions, list) or not raw_conditions:
        raise CatalogError("catalog conditions: must be a non-empty list")

    conditions: list[ConditionDef] = []
    seen_conditions: set[str] = set()
    seen_ids: set[str] = set()
    for raw_cond in raw_conditions:
        if not isinstance(raw_cond, dict):
            raise CatalogError("condition entry: expected a mapping")
        unknown = set(raw_cond) - _COND_KEYS
        if unknown:
            raise CatalogError(f"condition: unknown field {sorted(unknown)[0]!r}")
        cname = raw_cond.get("name")
        if not isinstance(cname, str) or not cname:
            raise CatalogError("condition name: missing or empty")
        if cname in seen_conditions:
            raise CatalogError(f"condition name: duplicate {cname!r}")
        seen_conditions.add(cname)
        ood = bool(raw_cond.get("ood", False))
        raw_subs = raw_cond.get("subcategories")
        if not isinstance(raw_subs, list) or not raw_subs:
            raise CatalogError(f"condition {cname!r}: subcategories must be a non-empty list")
        cond = ConditionDef(name=cname, ood=ood)
        for raw_sub in raw_subs:
            if not isinstance(raw_sub, dict):
                raise CatalogError(f"condition {cname!r}: subcategory entry must be a mapping")
            unknown = set(raw_sub) - _SUB_KEYS
            if unknown:
                raise CatalogError(
                    f"condition {cname!r}: unknown subcategory field {sorted(unknown)[0]!r}"
                )
            sub_id = raw_sub.get("id")
            if not isinstance(sub_id, str) or not sub_id:
                raise CatalogError(f"condition {cname!r}: subcategory id missing or empty")
            if sub_id in seen_ids:
                raise CatalogError(f"subcategory id: duplicate {sub_id!r}")
            seen_ids.add(sub_id)
            label = raw_sub.get("label")
            if not isinstance(label, str) or not label:
                raise CatalogError(f"subcategory {sub_id!r}: label missing or empty")
            raw_variants = raw_sub.get("variants")
            if not isinstance(raw_variants, list) or not raw_variants:
                raise CatalogError(
                    f"subcategory {sub_id!r}: variants must be a non-empty list"
                )
            variants: list[str] = []
            for v in raw_variants:
                if not isinstance(v, str) or not v.strip():
                    raise CatalogError(f"subcategory {sub_id!r}: variant must be non-empty text")
                if v in variants:
                    raise CatalogError(
                        f"subcategory {sub_id!r}: duplicate variant {v!r}"
                    )
                variants.append(v)
            template = _parse_lvef_template(raw_sub.get("lvef_template"), sub_id)
            cond.subcategories.append(
                SubcategoryDef(
                    id=sub_id,
                    condition=cname,
                    label=label,
                    variants=tuple(variants),
                    lvef_template=template,
                )
            )
        conditions.append(cond)
    return ConditionCatalog(name=name, conditions=conditions)


def dump_catalog(catalog: ConditionCatalog) -> str:
    """Serialize a catalog back to its file form (header + YAML body)."""
    body = {
        "kind": "catalog",
        "name": catalog.name,
        "conditions": [
            {
                "name": cond.name,
                "ood": cond.ood,
                "subcategories": [
                    _dump_subcategory(sub) for sub in cond.subcategories
                ],
            }
            for cond in catalog.conditions
        ],
    }
    return FORMAT_HEADER + "\n" + yaml.safe_dump(body, sort_keys=False, width=100)


def _dump_subcategory(sub: SubcategoryDef) -> dict:
    out: dict = {"id": sub.id, "label": sub.label, "variants": list(sub.variants)}
    if sub.lvef_template is not None:
        out["lvef_template"] = {
            "lo": sub.lvef_template.lo,
            "hi": sub.lvef_template.hi,
            "point_fraction": sub.lvef_template.point_fraction,
        }
    return out


def load_catalog(path: str) -> ConditionCatalog:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise CatalogError(f"catalog file not found: {path}") from None
    return parse_catalog(text)


def save_catalog(catalog: ConditionCatalog, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_catalog(catalog))


def default_catalog() -> ConditionCatalog:
    """The catalog shipped with the package."""
    text = (
        importlib.resources.files("echo_cohort")
        .joinpath("data", DEFAULT_CATALOG_RESOURCE)
        .read_text(encoding="utf-8")
    )
    return parse_catalog(text)
