"""Exact-rational discharging on embedded graphs.

Vertices outside H start with ``d(v) - 4``, vertices of H with
``d(v) + 3*gamma - 1`` and faces with ``|f| - 4``.  Four rules move charge
from major vertices and long faces to 3- and 4-vertices outside H.  Every
quantity is a ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .configurations import DEFAULT_STAMEN_VERTICES, Stamen, find_stamens, internally_disjoint
from .embedding import EmbeddedGraph, SubgraphMask, distances_from, euler_characteristic

DEFAULT_GAMMA = Fraction(4, 195)
GAMMA_CAP_VERTEX = Fraction(2, 13)
GAMMA_CAP_FACE = Fraction(1, 15)


@dataclass(frozen=True)
class DischargeParams:
    gamma: Fraction = DEFAULT_GAMMA

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")

    @property
    def rule1_amount(self) -> Fraction:
        return Fraction(1, 3) + self.gamma

    @property
    def rule2_amount(self) -> Fraction:
        return 3 * self.gamma / 4

    @property
    def caps(self) -> dict[str, bool]:
        return {
            "gamma<=2/13": self.gamma <= GAMMA_CAP_VERTEX,
            "gamma<=1/15": self.gamma <= GAMMA_CAP_FACE,
        }


@dataclass(frozen=True)
class ChargeLedger:
    vertex: tuple[Fraction, ...]
    face: tuple[Fraction, ...]
    phase: str = "initial"

    @property
    def total(self) -> Fraction:
        return sum(self.vertex, Fraction(0)) + sum(self.face, Fraction(0))


@dataclass(frozen=True)
class Transfer:
    rule: int
    source: tuple[str, int]
    target: int
    amount: Fraction
    evidence: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "source": {"kind": self.source[0], "index": self.source[1]},
            "target": self.target,
            "amount": fmt(self.amount),
            "evidence": self.evidence,
        }


def fmt(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def is_major(g: EmbeddedGraph, h: SubgraphMask, v: int) -> bool:
    return g.degree(v) >= 5 or v in h.vertices


def vertex_class(g: EmbeddedGraph, h: SubgraphMask, v: int) -> str:
    if v in h.vertices:
        return "H"
    d = g.degree(v)
    if d <= 4:
        return "deg<=4"
    if d >= 7:
        return "deg>=7"
    return f"deg{d}"


def classify(g: EmbeddedGraph, h: SubgraphMask) -> list[dict]:
    return [
        {
            "vertex": v,
            "degree": g.degree(v),
            "in_H": v in h.vertices,
            "major": is_major(g, h, v),
            "class": vertex_class(g, h, v),
        }
        for v in range(g.n)
    ]


def initial_charges(g: EmbeddedGraph, h: SubgraphMask, p: DischargeParams) -> ChargeLedger:
    vertex = tuple(
        Fraction(g.degree(v) - 1) + 3 * p.gamma if v in h.vertices else Fraction(g.degree(v) - 4)
        for v in range(g.n)
    )
    face = tuple(Fraction(f.length - 4) for f in g.faces)
    return ChargeLedger(vertex, face, "initial")


@dataclass(frozen=True)
class IdentityCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs": fmt(self.lhs), "rhs": fmt(self.rhs), "ok": self.ok}


def check_charge_identity(ledger: ChargeLedger, chi: int, h_size: int, p: DischargeParams) -> IdentityCheck:
    """Total initial charge against ``(3 + 3*gamma)|V(H)| - 4*chi``."""
    if ledger.phase != "initial":
        raise ValueError("the charge identity concerns initial charges")
    return IdentityCheck(ledger.total, (3 + 3 * p.gamma) * h_size - 4 * chi)


def apply_rules(
    g: EmbeddedGraph,
    h: SubgraphMask,
    p: DischargeParams,
    strict: bool = False,
    max_stamen_vertices: int = DEFAULT_STAMEN_VERTICES,
) -> tuple[ChargeLedger, list[Transfer]]:
    """Run the four redistribution rules.

    Rule 1 fires once per qualifying stamen.  With ``strict`` the tip must
    also lie within graph distance two of the sending vertex.
    """
    faces = g.faces
    four_faces = [(i, f.vertices) for i, f in enumerate(faces) if f.length == 4]
    log: list[Transfer] = []
    for v in range(g.n):
        if not is_major(g, h, v):
            continue
        dist = distances_from(g, v)
        for s in find_stamens(g, h, v, max_stamen_vertices):
            if strict and dist.get(s.tip, 3) > 2:
                continue
            on = set(s.path)
            face = next((i for i, fv in four_faces if on <= fv), None)
            if face is None:
                continue
            log.append(Transfer(1, ("vertex", v), s.tip, p.rule1_amount, {"stamen": list(s.path), "face": face}))
        for i, fv in four_faces:
            if v not in fv:
                continue
            for u in sorted(fv):
                if u == v or u in h.vertices or g.degree(u) != 4 or dist.get(u, 3) > 2:
                    continue
                log.append(Transfer(2, ("vertex", v), u, p.rule2_amount, {"face": i}))
    for i, f in enumerate(faces):
        if f.length < 5:
            continue
        for pos, u in enumerate(f.instances):
            if u in h.vertices:
                continue
            if g.degree(u) == 3:
                log.append(Transfer(3, ("face", i), u, p.rule1_amount, {"face": i, "instance": pos}))
            elif g.degree(u) == 4:
                log.append(Transfer(4, ("face", i), u, p.rule2_amount, {"face": i, "instance": pos}))

    init = initial_charges(g, h, p)
    vertex = list(init.vertex)
    face = list(init.face)
    for t in log:
        kind, idx = t.source
        if kind == "vertex":
            vertex[idx] -= t.amount
        else:
            face[idx] -= t.amount
        vertex[t.target] += t.amount
    return ChargeLedger(tuple(vertex), tuple(face), "final"), log


def rule1_overlaps(log: list[Transfer]) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Pairs of Rule-1 stamens from one sender that share an internal vertex."""
    by_sender: dict[int, list[Stamen]] = {}
    for t in log:
        if t.rule == 1:
            by_sender.setdefault(t.source[1], []).append(Stamen(tuple(t.evidence["stamen"])))
    out = []
    for v, stamens in sorted(by_sender.items()):
        for i, a in enumerate(stamens):
            for b in stamens[i + 1:]:
                if not internally_disjoint(a, b):
                    out.append((v, a.path, b.path))
    return out


def vertex_threshold(cls: str, p: DischargeParams) -> Fraction:
    g = p.gamma
    return {
        "deg<=4": 3 * g,
        "deg5": Fraction(1, 3) - 53 * g / 4,
        "deg6": Fraction(2, 3) - 35 * g / 2,
        "deg>=7": Fraction(2, 3) - 91 * g / 4,
        "H": min(3 * g, Fraction(1, 3) - 7 * g / 2),
    }[cls]


@dataclass
class ClaimReport:
    vertices: list[dict]
    faces: list[dict]
    gamma_caps: dict[str, bool]
    min_vertex_charge: Fraction | None
    closing_minimum: Fraction

    @property
    def violations(self) -> list[dict]:
        return [r for r in self.vertices + self.faces if not r["ok"]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def minima_by_class(self) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for r in self.vertices:
            c = r["class"]
            out[c] = min(out.get(c, r["charge"]), r["charge"])
        if self.faces:
            out["face"] = min(r["charge"] for r in self.faces)
        return out

    def to_json(self) -> dict:
        def row(r: dict) -> dict:
            return {**r, "threshold": fmt(r["threshold"]), "charge": fmt(r["charge"])}

        return {
            "ok": self.ok,
            "gamma_caps": self.gamma_caps,
            "min_vertex_charge": None if self.min_vertex_charge is None else fmt(self.min_vertex_charge),
            "closing_minimum": fmt(self.closing_minimum),
            "minima_by_class": {k: fmt(v) for k, v in sorted(self.minima_by_class().items())},
            "violations": [row(r) for r in self.violations],
            "vertices": [row(r) for r in self.vertices],
            "faces": [row(r) for r in self.faces],
        }


def verify_claim_bounds(g: EmbeddedGraph, h: SubgraphMask, p: DischargeParams, final: ChargeLedger) -> ClaimReport:
    """Compare each final charge with the lower bound claimed for its class."""
    rows = []
    for v in range(g.n):
        cls = vertex_class(g, h, v)
        thr = vertex_threshold(cls, p)
        rows.append({"vertex": v, "class": cls, "threshold": thr, "charge": final.vertex[v], "ok": final.vertex[v] >= thr})
    frows = []
    for i, f in enumerate(g.faces):
        frows.append({"face": i, "length": f.length, "threshold": Fraction(0), "charge": final.face[i], "ok": final.face[i] >= 0})
    closing = min(3 * p.gamma, Fraction(2, 3) - 91 * p.gamma / 4, Fraction(1, 3) - 53 * p.gamma / 4)
    return ClaimReport(rows, frows, p.caps, min(final.vertex) if final.vertex else None, closing)


def threshold_arithmetic(p: DischargeParams) -> dict:
    g = p.gamma
    terms = {
        "3g": 3 * g,
        "2/3-91g/4": Fraction(2, 3) - 91 * g / 4,
        "1/3-53g/4": Fraction(1, 3) - 53 * g / 4,
        "2/3-35g/2": Fraction(2, 3) - 35 * g / 2,
        "1/3-7g/2": Fraction(1, 3) - 7 * g / 2,
    }
    low = min(terms.values())
    return {
        "gamma": g,
        "terms": terms,
        "minimum": low,
        "attained_by": sorted(k for k, v in terms.items() if v == low),
        "coefficient": 3 + 3 * g,
        "caps": p.caps,
    }


@dataclass(frozen=True)
class VertexBound:
    h_size: int
    chi: int
    per_vertex_minimum: Fraction
    charge_bound: Fraction
    rounded_bound: Fraction

    @property
    def genus(self) -> Fraction:
        return Fraction(2 - self.chi, 2)

    @property
    def holds(self) -> bool:
        return self.charge_bound <= self.rounded_bound

    def to_json(self) -> dict:
        return {
            "h_size": self.h_size,
            "chi": self.chi,
            "genus": fmt(self.genus),
            "per_vertex_minimum": fmt(self.per_vertex_minimum),
            "charge_bound": fmt(self.charge_bound),
            "rounded_bound": fmt(self.rounded_bound),
            "holds": self.holds,
        }


def vertex_bound_from_charges(h_size: int, chi: int, p: DischargeParams, minimum: Fraction | None = None) -> VertexBound:
    """``|V(G)| <= ((3+3g)|V(H)| - 4 chi) / m`` next to ``50(|V(H)| - 13/5) + 130 genus``."""
    m = threshold_arithmetic(p)["minimum"] if minimum is None else Fraction(minimum)
    if m <= 0:
        raise ValueError("the per-vertex minimum must be positive to bound |V(G)|")
    charge_bound = ((3 + 3 * p.gamma) * h_size - 4 * chi) / m
    genus = Fraction(2 - chi, 2)
    rounded = 50 * (h_size - Fraction(13, 5)) + 130 * genus
    return VertexBound(h_size, chi, m, charge_bound, rounded)


def discharge(
    g: EmbeddedGraph,
    h: SubgraphMask,
    p: DischargeParams,
    strict: bool = False,
) -> dict:
    """Initial charges, identity, rules, final charges and claim table in one pass."""
    init = initial_charges(g, h, p)
    chi = euler_characteristic(g)
    identity = check_charge_identity(init, chi, len(h.vertices), p)
    final, log = apply_rules(g, h, p, strict=strict)
    claims = verify_claim_bounds(g, h, p, final)
    return {
        "initial": init,
        "final": final,
        "chi": chi,
        "identity": identity,
        "conserved": init.total == final.total,
        "transfers": log,
        "rule1_overlaps": rule1_overlaps(log),
        "claims": claims,
        "mode": "strict" if strict else "default",
    }
