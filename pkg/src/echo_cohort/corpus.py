"""Synthetic report generation and the corpus file format.

Each report carries 2-5 left-ventricle findings drawn from the catalog, a
summary that restates every finding (padded with right-heart and valve
distractor sentences to realistic report length), the subcategory labels the
findings assert, and at most one numeric LVEF interval. Generation is fully
deterministic under (catalog, n_reports, seed).
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np

from .catalog import ConditionCatalog, SubcategoryDef
from .errors import CorpusError
from .text import whitespace_token_count

FORMAT_HEADER = "echo-corpus v1"

# Summary token-length profile the generator samples from.
SUMMARY_TOKENS_MEAN = 239.0
SUMMARY_TOKENS_STD = 88.0
SUMMARY_TOKENS_MIN = 40
SUMMARY_TOKENS_MAX = 700

MIN_CONDITIONS_PER_REPORT = 2
MAX_CONDITIONS_PER_REPORT = 5

# Probability that a summary restates a finding with a different variant of
# the same subcategory instead of repeating it verbatim.
RESTATE_SWAP_PROB = 0.30

# Probability that a report opens with the combined "everything normal"
# statement covering wall thickness, cavity size, and systolic function.
COMPOUND_TRIO_PROB = 0.08

_POINT_TEMPLATES = (
    "LVEF {v}%",
    "The LVEF is {v}%",
    "LVEF is estimated at {v}%",
    "The left ventricular ejection fraction is estimated at {v}%",
    "Left ventricular ejection fraction is approximately {v}%",
    "Calculated LVEF of {v}% by the biplane method",
    "Visually estimated ejection fraction of {v}% on the current study",
    "Overall ejection fraction is {v}% by quantitative assessment",
)

_RANGE_TEMPLATES = (
    "LVEF {a}-{b}%",
    "EF {a} to {b}%",
    "The LVEF is {a}-{b}%",
    "Ejection fraction in the range of {a}-{b}%",
    "The left ventricular ejection fraction is estimated at {a}-{b}%",
    "LVEF is estimated between {a}-{b}% on the current study",
    "Estimated ejection fraction of {a} to {b}% by visual assessment",
)

# Non-LV observations used to pad summaries toward realistic report length.
# None of them contains an ejection fraction cue or a percent sign, so they
# can never introduce a stray LVEF mention.
DISTRACTOR_SENTENCES = (
    "The right atrium is normal in size",
    "The left atrium is mildly dilated",
    "The left atrium is normal in size",
    "Biatrial enlargement is noted",
    "The left atrial appendage is well visualized",
    "The interatrial septum is intact",
    "No patent foramen ovale is demonstrated with agitated saline",
    "The atrial septum bows toward the right",
    "The right ventricle is normal in size and function",
    "Right ventricular systolic function is preserved",
    "The right ventricle is mildly dilated with preserved function",
    "Right ventricular free wall motion is normal",
    "The right ventricular outflow view is unremarkable",
    "Right ventricular systolic pressure is estimated at 28 mmHg",
    "Right ventricular systolic pressure is estimated at 35 mmHg",
    "The tricuspid annular plane excursion is normal",
    "The aortic valve is trileaflet with normal excursion",
    "No aortic stenosis is present",
    "Trace aortic regurgitation is seen",
    "The mitral valve leaflets are thin and pliable",
    "Trace mitral regurgitation is present",
    "Mild mitral regurgitation is present",
    "Mild mitral annular calcification is noted",
    "The tricuspid valve is structurally normal",
    "Trace tricuspid regurgitation is seen",
    "Mild tricuspid regurgitation is present",
    "The pulmonic valve is not well visualized but grossly normal",
    "Trace pulmonic insufficiency is noted",
    "No valvular vegetations are identified",
    "The mitral inflow velocities are normal",
    "The aortic root measures 3.4 cm at the sinuses",
    "The ascending aorta is normal in caliber",
    "The aortic arch is not well visualized",
    "There is no pericardial effusion",
    "A trivial pericardial effusion is present without hemodynamic compromise",
    "No pleural effusion is identified on subcostal views",
    "The inferior vena cava is normal in size with normal respiratory variation",
    "The inferior vena cava measures 1.8 cm with preserved collapse",
    "No intracardiac shunt is demonstrated by color Doppler",
    "The estimated right atrial pressure is 8 mmHg",
    "Agitated saline study is negative for right to left shunt",
    "The main pulmonary artery is normal in caliber",
    "Pulmonary artery systolic pressure is within normal limits",
    "There is no evidence of pulmonary hypertension",
    "Image quality was adequate for interpretation",
    "Image quality was technically limited by body habitus",
    "The study was performed at rest without provocation",
    "Doppler alignment was suboptimal in the apical windows",
    "The patient was in sinus rhythm during image acquisition",
    "Frequent premature ventricular contractions were noted during the study",
    "The heart rate during acquisition was 72 beats per minute",
    "The heart rate during acquisition was 88 beats per minute",
    "Blood pressure at the time of study was 128 over 76",
    "Blood pressure at the time of study was 142 over 84",
    "Compared with the prior study there is no significant interval change in right heart findings",
    "The pericardium is of normal thickness without constrictive physiology",
    "No pericardial thickening or calcification is identified",
    "The coronary sinus is normal in caliber",
    "A prominent Eustachian valve is noted in the right atrium",
    "A Chiari network is present in the right atrium",
    "The descending thoracic aorta is grossly normal in the imaged segments",
    "No aortic coarctation is demonstrated by Doppler",
    "Mild aortic valve sclerosis without stenosis is present",
    "The mitral subvalvular apparatus is normal",
    "No mitral valve prolapse is identified",
    "The tricuspid annulus is mildly dilated",
    "Right ventricular diastolic collapse is not observed",
    "Interventricular septal position is normal throughout the cardiac cycle",
    "The left atrial volume index is mildly increased",
    "Pulmonary venous flow pattern is normal",
    "The pulmonary veins are well seen entering the left atrium",
    "No atrial septal defect is demonstrated by color flow imaging",
    "The right heart chambers are normal in size and function",
    "There is mild biatrial dilatation with normal ventricular chambers",
    "No extracardiac mass is identified adjacent to the heart",
    "The visualized portions of the great vessels are unremarkable",
    "Aortic valve peak velocity is 1.4 meters per second",
    "Mitral E wave velocity is 0.8 meters per second",
    "The study included two dimensional Doppler and color flow imaging",
    "Images were acquired from parasternal apical and subcostal windows",
    "A small amount of physiologic pericardial fluid is present",
    "The cardiac apex is directed leftward with normal situs",
    "Normal respiratory variation is seen across the tricuspid inflow",
    "The right ventricular apex shows prominent muscle bundles",
    "There is no evidence of constrictive hemodynamics",
    "A pacing lead is seen traversing the right heart chambers",
    "Normal global longitudinal strain values were obtained",
    "The aortic annulus measures 2.3 cm",
    "No spontaneous echo contrast is seen",
    "The examination was compared with the prior study from last year",
)


@dataclass
class SyntheticReport:
    report_id: str
    findings: list[str]
    summary: str
    labels: list[str]
    lvef: tuple[float, float] | None = None


@dataclass
class Corpus:
    reports: list[SyntheticReport]
    catalog_hash: str
    seed: int = 0

    def passages(self) -> dict[str, str]:
        """passage id -> searchable text (the report summary)."""
        return {r.report_id: r.summary for r in self.reports}

    def by_id(self, report_id: str) -> SyntheticReport:
        for r in self.reports:
            if r.report_id == report_id:
                return r
        raise CorpusError(f"unknown report id: {report_id}")


@dataclass(frozen=True)
class TokenStats:
    mean: float
    std: float
    min: int
    max: int
    count: int


@dataclass(frozen=True)
class CorpusStats:
    passages: TokenStats
    queries: TokenStats
    n_reports: int
    label_counts: dict[str, int] = field(default_factory=dict)


def _compound_variants(catalog: ConditionCatalog) -> dict[str, tuple[str, ...]]:
    """variant text -> sorted ids of every subcategory listing it (multi only)."""
    owners: dict[str, list[str]] = {}
    for sub in catalog.iter_subcategories():
        for v in sub.variants:
            owners.setdefault(v, []).append(sub.id)
    return {v: tuple(sorted(ids)) for v, ids in owners.items() if len(ids) > 1}


def _single_variants(sub: SubcategoryDef, compounds: dict[str, tuple[str, ...]]) -> list[str]:
    singles = [v for v in sub.variants if v not in compounds]
    return singles if singles else list(sub.variants)


def _sample_value(rng: np.random.Generator, lo: int, hi: int) -> int:
    v = int(rng.integers(lo, hi + 1))
    if rng.random() < 0.5:
        v = min(hi, max(lo, int(5 * round(v / 5))))
    return v


def _render_lvef(
    rng: np.random.Generator, sub: SubcategoryDef
) -> tuple[str, tuple[float, float], bool]:
    """Returns (statement, interval, is_range) for an LVEF-templated subcategory."""
    band = sub.lvef_template
    lo, hi = int(band.lo), int(band.hi)
    if rng.random() < 0.65 or hi - lo < 5:
        v = _sample_value(rng, lo, hi)
        template = _POINT_TEMPLATES[int(rng.integers(len(_POINT_TEMPLATES)))]
        return template.format(v=v), (float(v), float(v)), False
    a = _sample_value(rng, lo, hi - 5)
    b = a + 5
    template = _RANGE_TEMPLATES[int(rng.integers(len(_RANGE_TEMPLATES)))]
    return template.format(a=a, b=b), (float(a), float(b)), True


def _rerender_lvef(
    rng: np.random.Generator, interval: tuple[float, float], is_range: bool
) -> str:
    """Render the same interval with a freshly drawn surface template."""
    if is_range:
        template = _RANGE_TEMPLATES[int(rng.integers(len(_RANGE_TEMPLATES)))]
        return template.format(a=int(interval[0]), b=int(interval[1]))
    template = _POINT_TEMPLATES[int(rng.integers(len(_POINT_TEMPLATES)))]
    return template.format(v=int(interval[0]))


def _ood_occurrence_count(n_reports: int) -> int:
    # Single-digit presence per OOD condition regardless of corpus scale.
    return min(1 + n_reports // 400, 9)


def generate_corpus(catalog: ConditionCatalog, n_reports: int, seed: int) -> Corpus:
    """Generate a labeled corpus. Byte-identical for identical inputs."""
    if n_reports <= 0:
        raise CorpusError("n_reports must be positive")
    rng = np.random.default_rng(seed)
    compounds = _compound_variants(catalog)
    trio_statement = None
    for statement, ids in compounds.items():
        if len(ids) == 3:
            trio_statement = (statement, ids)
    normal_conditions = [c for c in catalog.conditions if not c.ood]
    ood_conditions = [c for c in catalog.conditions if c.ood]
    if len(normal_conditions) < MAX_CONDITIONS_PER_REPORT:
        raise CorpusError("catalog has too few non-OOD conditions to generate reports")

    # Pre-assign which reports carry each OOD condition.
    per_ood = _ood_occurrence_count(n_reports)
    ood_assignment: dict[int, list[SubcategoryDef]] = {}
    for cond in ood_conditions:
        k = min(per_ood, n_reports)
        chosen = rng.choice(n_reports, size=k, replace=False)
        for idx in sorted(int(i) for i in chosen):
            sub = cond.subcategories[int(rng.integers(len(cond.subcategories)))]
            ood_assignment.setdefault(idx, []).append(sub)

    reports: list[SyntheticReport] = []
    for idx in range(n_reports):
        findings: list[str] = []
        restatements: list[str] = []
        labels: set[str] = set()
        lvef: tuple[float, float] | None = None

        use_trio = trio_statement is not None and rng.random() < COMPOUND_TRIO_PROB
        if use_trio:
            statement, trio_ids = trio_statement
            findings.append(statement)
            restatements.append(statement)
            labels.update(trio_ids)
            trio_condition_names = {
                catalog.subcategory(s).condition for s in trio_ids
            }
            pool = [c for c in normal_conditions if c.name not in trio_condition_names]
            n_extra = int(rng.integers(1, 3))
            chosen = rng.choice(len(pool), size=n_extra, replace=False)
            conditions = [pool[int(i)] for i in sorted(int(c) for c in chosen)]
        else:
            n_cond = int(rng.integers(MIN_CONDITIONS_PER_REPORT, MAX_CONDITIONS_PER_REPORT + 1))
            chosen = rng.choice(len(normal_conditions), size=n_cond, replace=False)
            conditions = [normal_conditions[int(i)] for i in sorted(int(c) for c in chosen)]

        for cond in conditions:
            sub = cond.subcategories[int(rng.integers(len(cond.subcategories)))]
            labels.add(sub.id)
            if sub.lvef_template is not None and rng.random() < sub.lvef_template.point_fraction:
                statement, interval, is_range = _render_lvef(rng, sub)
                findings.append(statement)
                if rng.random() < RESTATE_SWAP_PROB:
                    restatements.append(_rerender_lvef(rng, interval, is_range))
                else:
                    restatements.append(statement)
                lvef = interval
            else:
                singles = _single_variants(sub, compounds)
                statement = singles[int(rng.integers(len(singles)))]
                findings.append(statement)
                if len(singles) > 1 and rng.random() < RESTATE_SWAP_PROB:
                    others = [v for v in singles if v != statement]
                    restatements.append(others[int(rng.integers(len(others)))])
                else:
                    restatements.append(statement)

        for sub in ood_assignment.get(idx, []):
            singles = _single_variants(sub, compounds)
            statement = singles[int(rng.integers(len(singles)))]
            findings.append(statement)
            restatements.append(statement)
            labels.add(sub.id)

        summary = _build_summary(rng, restatements)
        reports.append(
            SyntheticReport(
                report_id=f"r{idx:06d}",
                findings=findings,
                summary=summary,
                labels=sorted(labels),
                lvef=lvef,
            )
        )
    return Corpus(reports=reports, catalog_hash=catalog.content_hash(), seed=seed)


def _build_summary(rng: np.random.Generator, restatements: list[str]) -> str:
    target = int(
        np.clip(
            round(rng.normal(SUMMARY_TOKENS_MEAN, SUMMARY_TOKENS_STD)),
            SUMMARY_TOKENS_MIN,
            SUMMARY_TOKENS_MAX,
        )
    )
    sentences = list(restatements)
    n_tokens = sum(whitespace_token_count(s) for s in sentences)
    order = rng.permutation(len(DISTRACTOR_SENTENCES))
    i = 0
    while n_tokens < target:
        sentence = DISTRACTOR_SENTENCES[int(order[i % len(order)])]
        sentences.append(sentence)
        n_tokens += whitespace_token_count(sentence)
        i += 1
    perm = rng.permutation(len(sentences))
    return " ".join(sentences[int(j)].rstrip(".") + "." for j in perm)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Whitespace-token statistics for passages (summaries) and queries
    (distinct findings statements)."""
    if not corpus.reports:
        raise CorpusError("cannot compute statistics of an empty corpus")
    passage_lengths = np.array(
        [whitespace_token_count(r.summary) for r in corpus.reports], dtype=np.int64
    )
    distinct = sorted({s for r in corpus.reports for s in r.findings})
    query_lengths = np.array([whitespace_token_count(s) for s in distinct], dtype=np.int64)
    label_counts: dict[str, int] = {}
    for r in corpus.reports:
        for lab in r.labels:
            label_counts[lab] = label_counts.get(lab, 0) + 1
    return CorpusStats(
        passages=_token_stats(passage_lengths),
        queries=_token_stats(query_lengths),
        n_reports=len(corpus.reports),
        label_counts=dict(sorted(label_counts.items())),
    )


def _token_stats(lengths: np.ndarray) -> TokenStats:
    return TokenStats(
        mean=float(lengths.mean()),
        std=float(lengths.std()),
        min=int(lengths.min()),
        max=int(lengths.max()),
        count=int(lengths.size),
    )


def dump_corpus(corpus: Corpus) -> str:
    buf = io.StringIO()
    buf.write(FORMAT_HEADER + "\n")
    meta = {
        "kind": "corpus",
        "n_reports": len(corpus.reports),
        "seed": corpus.seed,
        "catalog_hash": corpus.catalog_hash,
    }
    buf.write(json.dumps(meta) + "\n")
    for r in corpus.reports:
        record = {
            "report_id": r.report_id,
            "findings": r.findings,
            "summary": r.summary,
            "labels": r.labels,
            "lvef": list(r.lvef) if r.lvef is not None else None,
        }
        buf.write(json.dumps(record) + "\n")
    return buf.getvalue()


def save_corpus(corpus: Corpus, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_corpus(corpus))


def parse_corpus(text: str) -> Corpus:
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        head = lines[0].strip() if lines else ""
        raise CorpusError(f"corpus header: expected {FORMAT_HEADER!r}, got {head!r}")
    if len(lines) < 2:
        raise CorpusError("corpus file: missing metadata line")
    try:
        meta = json.loads(lines[1])
    except json.JSONDecodeError as exc:
        raise CorpusError(f"corpus metadata: invalid JSON ({exc})") from exc
    if not isinstance(meta, dict) or meta.get("kind") != "corpus":
        raise CorpusError("corpus metadata: kind must be 'corpus'")
    reports: list[SyntheticReport] = []
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"corpus line {lineno}: invalid JSON ({exc})") from exc
        try:
            lvef = rec["lvef"]
            reports.append(
                SyntheticReport(
                    report_id=rec["report_id"],
                    findings=list(rec["findings"]),
                    summary=rec["summary"],
                    labels=list(rec["labels"]),
                    lvef=(float(lvef[0]), float(lvef[1])) if lvef is not None else None,
                )
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise CorpusError(f"corpus line {lineno}: missing or malformed field ({exc})") from exc
    expected = meta.get("n_reports")
    if expected is not None and expected != len(reports):
        raise CorpusError(
            f"corpus file: metadata declares {expected} reports, found {len(reports)}"
        )
    return Corpus(
        reports=reports,
        catalog_hash=str(meta.get("catalog_hash", "")),
        seed=int(meta.get("seed", 0)),
    )


def load_corpus(path: str) -> Corpus:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_corpus(fh.read())
    except FileNotFoundError:
        raise CorpusError(f"corpus file not found: {path}") from None
