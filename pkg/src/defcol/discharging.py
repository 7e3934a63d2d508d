"""Structural classification of plane embeddings and the three discharging
rule systems with exact rational charge accounting.

Initial charges are 2d(v) - 6 on vertices and d(f) - 6 on faces, which sum
to exactly -12 on any Euler-certified embedding. A rule system is an
ordered list of transfers; all rules are evaluated against the initial
classification simultaneously, so transfers add up and are never chained.
All arithmetic is exact (fractions.Fraction); floats never enter a ledger.

Classification vocabulary:
  * a 2-vertex is bad when it lies on a 3-face, good otherwise;
  * a 3-face is bad when a 2-vertex lies on it;
  * a 3-face f is pendant to a vertex v off f when some degree-3 vertex on
    f is adjacent to v;
  * per vertex, alpha counts incident 3-faces, beta adjacent good
    2-vertices, gamma pendant 3-faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .embedding import Face, PlaneEmbedding, trace_faces
from .graphs import Graph, Vertex, is_c4c5_free, is_connected

ElementKey = tuple[str, object]  # ("v", vertex id) or ("f", face index)

PASS = "pass"
DEGENERATE = "degenerate"
FAIL = "fail"

# target relations a rule can feed
GOOD2_ADJACENT = "good2_adjacent"
THREE_FACE_INCIDENT = "three_face_incident"
THREE_FACE_PENDANT = "three_face_pendant"
BAD2_INCIDENT = "bad2_incident"
TWO_VERTEX_INCIDENT = "two_vertex_incident"

# source selectors
VERTEX_SOURCE = "vertex"
BIG_FACE_SOURCE = "big_face"
BAD3_FACE_SOURCE = "bad3_face"


@dataclass(frozen=True)
class StructureTags:
    """Complete structural classification of one embedding."""

    faces: tuple[Face, ...]
    degree: dict[Vertex, int]
    face_degree: tuple[int, ...]
    face_walk_vertices: tuple[tuple[Vertex, ...], ...]
    face_signature: tuple[tuple[int, ...], ...]
    three_faces: tuple[int, ...]
    bad_two_vertices: frozenset[Vertex]
    good_two_vertices: frozenset[Vertex]
    bad_three_faces: frozenset[int]
    incident_three_faces: dict[Vertex, tuple[int, ...]]
    pendant_faces: dict[Vertex, tuple[int, ...]]
    alpha: dict[Vertex, int]
    beta: dict[Vertex, int]
    gamma: dict[Vertex, int]


@dataclass(frozen=True)
class Transfer:
    rule_id: str
    source: ElementKey
    target: ElementKey
    amount: Fraction


@dataclass(frozen=True)
class ChargeLedger:
    """Exact rational charge per element, in canonical element order."""

    elements: tuple[ElementKey, ...]
    charges: dict[ElementKey, Fraction]

    def total(self) -> Fraction:
        return sum(self.charges.values(), Fraction(0))

    def charge_of(self, key: ElementKey) -> Fraction:
        return self.charges[key]


@dataclass(frozen=True)
class Rule:
    rule_id: str
    source_kind: str
    target: str
    amount: Fraction
    min_degree: int = 0
    max_degree: int | None = None

    def selects_degree(self, d: int) -> bool:
        if d < self.min_degree:
            return False
        return self.max_degree is None or d <= self.max_degree


@dataclass(frozen=True)
class DischargeRuleSet:
    name: str
    rules: tuple[Rule, ...]


def _vrule(rid, amount, target, lo, hi=None):
    return Rule(rid, VERTEX_SOURCE, target, Fraction(amount), lo, hi)


RULES_44 = DischargeRuleSet(
    "44",
    (
        _vrule("R1", 1, GOOD2_ADJACENT, 6),
        _vrule("R2", 2, THREE_FACE_INCIDENT, 6),
        _vrule("R3", 1, THREE_FACE_PENDANT, 6),
        Rule("R4", BIG_FACE_SOURCE, BAD2_INCIDENT, Fraction(1), 7),
        _vrule("R5", 1, THREE_FACE_INCIDENT, 4, 5),
        Rule("R6", BAD3_FACE_SOURCE, TWO_VERTEX_INCIDENT, Fraction(1)),
    ),
)

RULES_35 = DischargeRuleSet(
    "35",
    (
        _vrule("R1", Fraction(4, 5), GOOD2_ADJACENT, 5, 5),
        _vrule("R2", Fraction(8, 5), THREE_FACE_INCIDENT, 5, 5),
        _vrule("R3", Fraction(4, 5), THREE_FACE_PENDANT, 5, 5),
        _vrule("R4", 1, GOOD2_ADJACENT, 6, 6),
        _vrule("R5", 2, THREE_FACE_INCIDENT, 6, 7),
        _vrule("R6", 1, THREE_FACE_PENDANT, 6, 6),
        _vrule("R7", Fraction(6, 5), GOOD2_ADJACENT, 7),
        _vrule("R8", Fraction(12, 5), THREE_FACE_INCIDENT, 8),
        _vrule("R9", Fraction(6, 5), THREE_FACE_PENDANT, 7),
        Rule("R10", BIG_FACE_SOURCE, BAD2_INCIDENT, Fraction(1), 7),
        _vrule("R11", 1, THREE_FACE_INCIDENT, 4, 4),
        Rule("R12", BAD3_FACE_SOURCE, TWO_VERTEX_INCIDENT, Fraction(1)),
    ),
)

RULES_29 = DischargeRuleSet(
    "29",
    (
        _vrule("R1", Fraction(1, 2), GOOD2_ADJACENT, 4, 10),
        _vrule("R2", 1, THREE_FACE_INCIDENT, 4, 4),
        _vrule("R3", Fraction(1, 2), THREE_FACE_PENDANT, 4, 10),
        _vrule("R4", Fraction(3, 2), THREE_FACE_INCIDENT, 5, 10),
        _vrule("R5", Fraction(5, 2), THREE_FACE_INCIDENT, 11, 11),
        _vrule("R6", Fraction(3, 2), GOOD2_ADJACENT, 11),
        _vrule("R7", 3, THREE_FACE_INCIDENT, 12),
        _vrule("R8", Fraction(3, 2), THREE_FACE_PENDANT, 11),
        Rule("R9", BIG_FACE_SOURCE, BAD2_INCIDENT, Fraction(1), 7),
        Rule("R10", BAD3_FACE_SOURCE, TWO_VERTEX_INCIDENT, Fraction(1)),
    ),
)

RULESETS: dict[str, DischargeRuleSet] = {
    "44": RULES_44,
    "35": RULES_35,
    "29": RULES_29,
}


def _require_euler(emb: PlaneEmbedding) -> list[Face]:
    g = emb.graph
    if not is_connected(g):
        raise ValueError("embedding graph must be connected")
    faces = trace_faces(emb)
    if g.vertex_count - g.edge_count + len(faces) != 2:
        raise ValueError("embedding fails the Euler check (not genus zero)")
    return faces


def classify(emb: PlaneEmbedding) -> StructureTags:
    """Tag every vertex and face of an Euler-certified embedding."""
    faces = _require_euler(emb)
    g = emb.graph
    degree = {v: g.degree(v) for v in g.vertices}
    face_degree = tuple(f.degree for f in faces)
    face_walk_vertices = tuple(f.vertices() for f in faces)
    face_signature = tuple(
        tuple(sorted(degree[v] for v in walk)) for walk in face_walk_vertices
    )
    three_faces = tuple(i for i, d in enumerate(face_degree) if d == 3)

    incident_three: dict[Vertex, list[int]] = {v: [] for v in g.vertices}
    for i in three_faces:
        for v in face_walk_vertices[i]:
            incident_three[v].append(i)

    bad_two = frozenset(
        v for v in g.vertices if degree[v] == 2 and incident_three[v]
    )
    good_two = frozenset(
        v for v in g.vertices if degree[v] == 2 and not incident_three[v]
    )
    bad_three = frozenset(
        i for i in three_faces if any(degree[v] == 2 for v in face_walk_vertices[i])
    )

    pendant: dict[Vertex, set[int]] = {v: set() for v in g.vertices}
    for i in three_faces:
        on_face = set(face_walk_vertices[i])
        for w in face_walk_vertices[i]:
            if degree[w] != 3:
                continue
            for x in g.neighbors(w):
                if x not in on_face:
                    pendant[x].add(i)
    pendant_faces = {v: tuple(sorted(pendant[v])) for v in g.vertices}

    alpha = {v: len(incident_three[v]) for v in g.vertices}
    beta = {
        v: sum(1 for u in g.neighbors(v) if u in good_two) for v in g.vertices
    }
    gamma = {v: len(pendant_faces[v]) for v in g.vertices}

    return StructureTags(
        faces=tuple(faces),
        degree=degree,
        face_degree=face_degree,
        face_walk_vertices=face_walk_vertices,
        face_signature=face_signature,
        three_faces=three_faces,
        bad_two_vertices=bad_two,
        good_two_vertices=good_two,
        bad_three_faces=bad_three,
        incident_three_faces={v: tuple(ns) for v, ns in incident_three.items()},
        pendant_faces=pendant_faces,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
    )


def _element_order(g: Graph, face_count: int) -> tuple[ElementKey, ...]:
    keys: list[ElementKey] = [("v", v) for v in g.vertices]
    keys.extend(("f", i) for i in range(face_count))
    return tuple(keys)


def initial_charges(emb: PlaneEmbedding, tags: StructureTags | None = None) -> ChargeLedger:
    """Charge 2d(v) - 6 per vertex and d(f) - 6 per face; total is -12."""
    if tags is None:
        tags = classify(emb)
    g = emb.graph
    charges: dict[ElementKey, Fraction] = {}
    for v in g.vertices:
        charges[("v", v)] = Fraction(2 * tags.degree[v] - 6)
    for i, d in enumerate(tags.face_degree):
        charges[("f", i)] = Fraction(d - 6)
    return ChargeLedger(_element_order(g, len(tags.faces)), charges)


def _rule_transfers(g: Graph, tags: StructureTags, rule: Rule) -> Iterable[Transfer]:
    if rule.source_kind == VERTEX_SOURCE:
        for v in g.vertices:
            if not rule.selects_degree(tags.degree[v]):
                continue
            src = ("v", v)
            if rule.target == GOOD2_ADJACENT:
                for u in g.ordered_neighbors(v):
                    if u in tags.good_two_vertices:
                        yield Transfer(rule.rule_id, src, ("v", u), rule.amount)
            elif rule.target == THREE_FACE_INCIDENT:
                for i in tags.incident_three_faces[v]:
                    yield Transfer(rule.rule_id, src, ("f", i), rule.amount)
            elif rule.target == THREE_FACE_PENDANT:
                for i in tags.pendant_faces[v]:
                    yield Transfer(rule.rule_id, src, ("f", i), rule.amount)
            else:
                raise AssertionError(f"bad vertex-rule target {rule.target}")
    elif rule.source_kind == BIG_FACE_SOURCE:
        # Face-incidence transfers count boundary-walk occurrences, so a
        # vertex the walk crosses twice receives twice.
        for i, d in enumerate(tags.face_degree):
            if not rule.selects_degree(d):
                continue
            for u in tags.face_walk_vertices[i]:
                if u in tags.bad_two_vertices:
                    yield Transfer(rule.rule_id, ("f", i), ("v", u), rule.amount)
    elif rule.source_kind == BAD3_FACE_SOURCE:
        for i in sorted(tags.bad_three_faces):
            for u in tags.face_walk_vertices[i]:
                if tags.degree[u] == 2:
                    yield Transfer(rule.rule_id, ("f", i), ("v", u), rule.amount)
    else:
        raise AssertionError(f"bad rule source {rule.source_kind}")


def apply_ruleset(
    emb: PlaneEmbedding, ruleset: DischargeRuleSet
) -> tuple[ChargeLedger, list[Transfer]]:
    """Run every rule against the initial classification; returns the final
    ledger and the complete transfer log in deterministic order."""
    tags = classify(emb)
    initial = initial_charges(emb, tags)
    charges = dict(initial.charges)
    log: list[Transfer] = []
    for rule in ruleset.rules:
        for t in _rule_transfers(emb.graph, tags, rule):
            charges[t.source] -= t.amount
            charges[t.target] += t.amount
            log.append(t)
    return ChargeLedger(initial.elements, charges), log


def verify_conservation(initial: ChargeLedger, final: ChargeLedger) -> bool:
    """Exact rational equality of totals over the same element set."""
    if initial.elements != final.elements:
        raise ValueError("ledgers cover different element sets")
    return initial.total() == final.total()


def negative_elements(ledger: ChargeLedger) -> list[tuple[ElementKey, Fraction]]:
    """Elements with strictly negative charge, in canonical order."""
    return [
        (key, ledger.charges[key])
        for key in ledger.elements
        if ledger.charges[key] < 0
    ]


# -- structural validators ------------------------------------------------


@dataclass(frozen=True)
class ValidationItem:
    element: object
    status: str
    detail: dict


@dataclass(frozen=True)
class ValidationReport:
    name: str
    status: str
    items: tuple[ValidationItem, ...] = ()
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "reason": self.reason,
            "items": [
                {"element": str(i.element), "status": i.status, **i.detail}
                for i in self.items
            ],
        }


def _combine(name: str, items: list[ValidationItem]) -> ValidationReport:
    status = PASS
    if any(i.status == DEGENERATE for i in items):
        status = DEGENERATE
    if any(i.status == FAIL for i in items):
        status = FAIL
    return ValidationReport(name, status, tuple(items))


def _validator_precondition(emb: PlaneEmbedding) -> str | None:
    g = emb.graph
    if not is_connected(g):
        return "graph is disconnected"
    faces = trace_faces(emb)
    if g.vertex_count - g.edge_count + len(faces) != 2:
        return "embedding fails the Euler check"
    if not is_c4c5_free(g):
        return "graph contains a 4-cycle or 5-cycle"
    return None


def _face_corners(tags: StructureTags, v: Vertex) -> list[int]:
    """Face indices at each corner of v, one per occurrence, so a vertex of
    degree d appears in exactly d entries."""
    corners = []
    for i, walk in enumerate(tags.face_walk_vertices):
        corners.extend(i for u in walk if u == v)
    return corners


def _coincident_boundaries(tags: StructureTags, i: int, j: int) -> bool:
    return (
        i != j
        and tags.faces[i].edge_multiset() == tags.faces[j].edge_multiset()
    )


def check_bad2_face_degrees(emb: PlaneEmbedding) -> ValidationReport:
    """Every bad 2-vertex must have its non-triangle face of degree >= 7.

    Embeddings where the two faces at the 2-vertex coincide, or share the
    same boundary edges (a doubly-covered triangle), are flagged degenerate
    rather than judged.
    """
    name = "bad2_face_degrees"
    reason = _validator_precondition(emb)
    if reason:
        return ValidationReport(name, DEGENERATE, (), reason)
    tags = classify(emb)
    items = []
    for v in emb.graph.vertices:
        if v not in tags.bad_two_vertices:
            continue
        corners = _face_corners(tags, v)
        f1, f2 = corners
        if f1 == f2:
            items.append(
                ValidationItem(v, DEGENERATE, {"why": "one face covers both corners"})
            )
            continue
        if _coincident_boundaries(tags, f1, f2):
            items.append(
                ValidationItem(v, DEGENERATE, {"why": "faces share identical boundaries"})
            )
            continue
        other = f2 if tags.face_degree[f1] == 3 else f1
        d = tags.face_degree[other]
        status = PASS if d >= 7 else FAIL
        items.append(ValidationItem(v, status, {"other_face": other, "other_degree": d}))
    return _combine(name, items)


def check_big_face_bad2_capacity(emb: PlaneEmbedding) -> ValidationReport:
    """Every simple-cycle face of degree k >= 7 carries at most k - 6
    bad-2-vertex incidences (counted with walk multiplicity).

    A 7+-face whose boundary walk revisits a vertex is reported degenerate:
    the bound is only supported on simple cycle boundaries.
    """
    name = "big_face_bad2_capacity"
    reason = _validator_precondition(emb)
    if reason:
        return ValidationReport(name, DEGENERATE, (), reason)
    tags = classify(emb)
    items = []
    for i, d in enumerate(tags.face_degree):
        if d < 7:
            continue
        walk = tags.face_walk_vertices[i]
        count = sum(1 for u in walk if u in tags.bad_two_vertices)
        if len(set(walk)) != len(walk):
            items.append(
                ValidationItem(
                    i,
                    DEGENERATE,
                    {"why": "boundary walk revisits a vertex", "degree": d, "bad2": count},
                )
            )
            continue
        status = PASS if count <= d - 6 else FAIL
        items.append(ValidationItem(i, status, {"degree": d, "bad2": count, "bound": d - 6}))
    return _combine(name, items)


def check_vertex_profiles(emb: PlaneEmbedding) -> ValidationReport:
    """Per vertex: alpha <= floor(d/2) and 2*alpha + beta + gamma <= d.

    A second, differently weighted bound (2*beta + alpha + gamma <= d) is
    recorded per vertex for documentation but never judged: it fails on
    ordinary cycles, and the charge arithmetic consistently relies on the
    first form. Vertices on a doubly-covered triangle are degenerate.
    """
    name = "vertex_profiles"
    reason = _validator_precondition(emb)
    if reason:
        return ValidationReport(name, DEGENERATE, (), reason)
    tags = classify(emb)
    items = []
    for v in emb.graph.vertices:
        d = tags.degree[v]
        a, b, c = tags.alpha[v], tags.beta[v], tags.gamma[v]
        incident = tags.incident_three_faces[v]
        degenerate = any(
            _coincident_boundaries(tags, incident[p], incident[q])
            for p in range(len(incident))
            for q in range(p + 1, len(incident))
        )
        detail = {
            "degree": d,
            "alpha": a,
            "beta": b,
            "gamma": c,
            "alt_form_holds": 2 * b + a + c <= d,
        }
        if degenerate:
            detail["why"] = "incident 3-faces share identical boundaries"
            items.append(ValidationItem(v, DEGENERATE, detail))
            continue
        ok = a <= d // 2 and 2 * a + b + c <= d
        items.append(ValidationItem(v, PASS if ok else FAIL, detail))
    return _combine(name, items)


ALL_VALIDATORS = (
    check_bad2_face_degrees,
    check_big_face_bad2_capacity,
    check_vertex_profiles,
)


# -- audit report ----------------------------------------------------------


def _key_json(key: ElementKey) -> dict:
    kind, ident = key
    return {"kind": "vertex" if kind == "v" else "face", "id": str(ident)}


def build_audit(emb: PlaneEmbedding, ruleset: DischargeRuleSet) -> dict:
    """Full machine-readable audit: charges, transfers, conservation,
    negative elements, and the three structural validator verdicts."""
    tags = classify(emb)
    initial = initial_charges(emb, tags)
    final, log = apply_ruleset(emb, ruleset)
    per_element: dict[ElementKey, dict] = {}
    for key in initial.elements:
        kind, ident = key
        entry = _key_json(key)
        if kind == "v":
            entry["degree"] = tags.degree[ident]
        else:
            entry["degree"] = tags.face_degree[ident]
            entry["walk"] = [str(u) for u in tags.face_walk_vertices[ident]]
        entry["initial"] = str(initial.charges[key])
        entry["final"] = str(final.charges[key])
        entry["transfers"] = []
        per_element[key] = entry
    for t in log:
        amount = str(t.amount)
        per_element[t.source]["transfers"].append(
            {"rule": t.rule_id, "sent_to": _key_json(t.target), "amount": amount}
        )
        per_element[t.target]["transfers"].append(
            {"rule": t.rule_id, "received_from": _key_json(t.source), "amount": amount}
        )
    return {
        "format": "defcol-audit v1",
        "ruleset": ruleset.name,
        "initial_total": str(initial.total()),
        "final_total": str(final.total()),
        "conservation": verify_conservation(initial, final),
        "elements": [per_element[key] for key in initial.elements],
        "negative": [
            {**_key_json(key), "charge": str(charge)}
            for key, charge in negative_elements(final)
        ],
        "validators": {
            report.name: report.to_json()
            for report in (v(emb) for v in ALL_VALIDATORS)
        },
    }
