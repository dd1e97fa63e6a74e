"""Axiom-by-axiom verification reports for structure documents."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .averaging import (
    AveragingPair,
    GroupEndoMap,
    averaging_pair_failure,
    left_avg_brace_failure,
    left_avg_failure,
    right_avg_brace_failure,
    right_avg_failure,
)
from .digroup import GDigroup, digroup_identities_failure, halo_of
from .hemi import HemiPair, hemi_pair_failure
from .selfdist import make_shelf, self_distributivity_failure
from .serialize import StructureDocument, _table, validate
from .solution import SolutionTable, Twist, _componentwise_failure, twist_failure
from .tables import (
    BinOpTable,
    Failure,
    Map,
    associativity_failure,
    group_failure,
    inverse,
    is_permutation,
    make_group,
    triples,
)


@dataclass(frozen=True)
class Entry:
    check: str
    ok: Optional[bool]  # None: skipped because an earlier check failed
    failure: Optional[Failure] = None

    def as_dict(self) -> dict:
        out = {"check": self.check, "status": {True: "pass", False: "fail", None: "skipped"}[self.ok]}
        if self.failure is not None:
            out["witness"] = self.failure.as_dict()
        return out


@dataclass
class Ledger:
    kind: str
    entries: list[Entry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.ok is not False for e in self.entries)

    def record(self, check: str, failure: Optional[Failure]) -> bool:
        self.entries.append(Entry(check, failure is None, failure))
        return failure is None

    def skip(self, *checks: str) -> None:
        self.entries.extend(Entry(c, None) for c in checks)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "passed": self.passed, "entries": [e.as_dict() for e in self.entries]}


def _triple_identity(name: str, n: int, holds: Callable[[int, int, int], bool]) -> Optional[Failure]:
    for a, b, c in triples(n):
        if not holds(a, b, c):
            return Failure(name, (a, b, c))
    return None


def _rows_bijective(name: str, rows: Sequence[Sequence[int]]) -> Optional[Failure]:
    for a, row in enumerate(rows):
        if not is_permutation(row):
            return Failure(name, (a,), f"map indexed by {a} is not a bijection")
    return None


# -- per kind ------------------------------------------------------------------

def _group(L: Ledger, op: BinOpTable, identity: int, claims: Sequence[str]) -> bool:
    failure = group_failure(op)
    stage = {None: 3, "associativity": 0, "identity": 1, "inverse": 2}[failure.axiom if failure else None]
    ok = True
    for i, name in enumerate(("associativity", "identity", "inverse")):
        if i < stage:
            L.record(name, None)
        elif i == stage:
            ok = L.record(name, failure)
        else:
            L.skip(name)
    if ok:
        G = make_group(op)
        L.record("stated identity", None if G.identity == identity else Failure("stated identity", (identity,)))
        ok = L.entries[-1].ok
        if "abelian" in claims:
            bad = next(((a, b) for a in range(op.n) for b in range(op.n) if op(a, b) != op(b, a)), None)
            ok = L.record("claim: abelian", None if bad is None else Failure("abelian", bad)) and ok
    return ok


def _shelf(L: Ledger, tri: BinOpTable, claims: Sequence[str]) -> bool:
    ok = L.record("self-distributivity", self_distributivity_failure(tri))
    if "rack" in claims or "quandle" in claims:
        ok = L.record("claim: rack", _rows_bijective("rack", tri.table)) and ok
    if "quandle" in claims:
        bad = next((a for a in range(tri.n) if tri(a, a) != a), None)
        ok = L.record("claim: quandle", None if bad is None else Failure("quandle", (bad,), "a ▷ a ≠ a")) and ok
    return ok


DIGROUP_AXIOMS = (
    "⊢ associativity",
    "⊣ associativity",
    "inner associativity",
    "right bar-side irrelevance",
    "left bar-side irrelevance",
    "bar-units",
    "unique unilateral inverses",
    "inverse identities",
)


def _digroup(L: Ledger, l: BinOpTable, r: BinOpTable, claims: Sequence[str] = (), prefix: str = "") -> bool:
    n = l.n
    A, B = l.table, r.table
    checks = [
        associativity_failure(l),
        associativity_failure(r),
        _triple_identity("inner associativity", n, lambda a, b, c: A[a][B[b][c]] == B[A[a][b]][c]),
        _triple_identity("right bar-side irrelevance", n, lambda a, b, c: B[a][A[b][c]] == B[a][B[b][c]]),
        _triple_identity("left bar-side irrelevance", n, lambda a, b, c: A[A[a][b]][c] == A[B[a][b]][c]),
    ]
    ok = True
    for name, failure in zip(DIGROUP_AXIOMS, checks):
        ok = L.record(prefix + name, failure) and ok
    if not ok:
        L.skip(*(prefix + x for x in DIGROUP_AXIOMS[5:]))
        return False
    halo = halo_of(l, r)
    if not L.record(prefix + "bar-units", None if halo else Failure("bar-units", (), "halo is empty")):
        L.skip(*(prefix + x for x in DIGROUP_AXIOMS[6:]))
        return False
    failure = None
    for e in halo:
        for a in range(n):
            if sum(r(x, a) == e for x in range(n)) != 1 or sum(l(a, y) == e for y in range(n)) != 1:
                failure = Failure("unique unilateral inverses", (e, a))
                break
        if failure:
            break
    if not L.record(prefix + "unique unilateral inverses", failure):
        L.skip(prefix + "inverse identities")
        return False
    ok = L.record(prefix + "inverse identities", digroup_identities_failure(GDigroup.unchecked(l, r)))
    if "abelian" in claims:
        bad = next(((a, b) for a in range(n) for b in range(n) if l(a, b) != r(b, a)), None)
        ok = L.record("claim: abelian", None if bad is None else Failure("abelian", bad, "a ⊢ b ≠ b ⊣ a")) and ok
    return ok


def _diskew(L: Ledger, p: dict, claims: Sequence[str]) -> bool:
    d = p["digroup"]
    l, r, circ = _table(d["vdash"]), _table(d["dashv"]), _table(p["circ"])
    names = ("right group", "zero is a bar-unit", "D1", "D2", "D3")
    if not _digroup(L, l, r, prefix="digroup: "):
        L.skip(*names)
        return False
    D = GDigroup.unchecked(l, r)
    n = D.n
    o = circ.table
    failure = associativity_failure(circ) or _rows_bijective("right group", o)
    if failure is not None:
        failure = Failure("right group", failure.witness, failure.detail or failure.axiom)
    ok = L.record("right group", failure)
    zero = p["zero"]
    ok = L.record("zero is a bar-unit", None if zero in D.halo else Failure("zero is a bar-unit", (zero,))) and ok
    if not ok:
        L.skip(*names[2:])
        return False
    inv, A, B = D.inv_I[zero], l.table, r.table
    ok = L.record("D1", _triple_identity("D1", n, lambda a, b, c: o[a][A[b][c]] == A[A[o[a][b]][inv[a]]][o[a][c]]))
    ok = L.record("D2", _triple_identity("D2", n, lambda a, b, c: o[a][B[b][c]] == B[B[o[a][b]][inv[a]]][o[a][c]])) and ok
    ok = L.record("D3", _triple_identity("D3", n, lambda a, b, c: o[A[a][b]][c] == o[B[a][b]][c])) and ok
    if "skew-brace" in claims:
        one = len(D.halo) == 1 and l == r
        ok = L.record("claim: skew-brace", None if one else Failure("skew-brace", (), "⊢ ≠ ⊣ or several bar-units")) and ok
    if "di-brace" in claims:
        bad = next(((a, b) for a in range(n) for b in range(n) if l(a, b) != r(b, a)), None)
        ok = L.record("claim: di-brace", None if bad is None else Failure("di-brace", bad)) and ok
    return ok


def _solution(L: Ledger, r: SolutionTable, claims: Sequence[str]) -> bool:
    lam, rho = r.lam, r.rho
    n = r.n
    ok = True
    # each component identity on its own, so every failing one gets a witness
    comps = {
        "Y1": lambda a, b, c: lam[a][lam[b][c]] == lam[lam[a][b]][lam[rho[b][a]][c]],
        "Y2": lambda a, b, c: lam[rho[lam[b][c]][a]][rho[c][b]] == rho[lam[rho[b][a]][c]][lam[a][b]],
        "Y3": lambda a, b, c: rho[c][rho[b][a]] == rho[rho[c][b]][rho[lam[b][c]][a]],
    }
    for name, holds in comps.items():
        ok = L.record(name, _triple_identity(name, n, holds)) and ok
    if ok != (_componentwise_failure(r) is None):
        raise AssertionError("ledger and library disagree on the Yang-Baxter equation")
    if "bijective" in claims:
        m = r.as_map()
        bad = None if is_permutation(m) else Failure("bijective", divmod(next(i for i in range(n * n) if m.count(m[i]) > 1), n))
        ok = L.record("claim: bijective", bad) and ok
    if "left-nondegenerate" in claims:
        ok = L.record("claim: left-nondegenerate", _rows_bijective("left non-degenerate", lam)) and ok
    if "right-nondegenerate" in claims:
        ok = L.record("claim: right-nondegenerate", _rows_bijective("right non-degenerate", rho)) and ok
    return ok


def _hemipair(L: Ledger, p: dict) -> bool:
    tri = _table(p["shelf"]["tri"])
    names = ("twist", "hemi pair")
    if not L.record("base self-distributivity", self_distributivity_failure(tri)):
        L.skip(*names)
        return False
    S = make_shelf(tri)
    T = Twist(S, tuple(tuple(row) for row in p["twist"]))
    if not L.record("twist", twist_failure(T)):
        L.skip("hemi pair")
        return False
    return L.record("hemi pair", hemi_pair_failure(HemiPair(T, p["psi"], p["sigma"])))


def _avgmap(L: Ledger, p: dict, claims: Sequence[str]) -> bool:
    ok = _group(L, _table(p["group"]["table"]), p["group"]["identity"], ())
    names = ("left averaging", "right averaging")
    if not ok:
        L.skip(*names)
        return False
    G = make_group(_table(p["group"]["table"]))
    f = GroupEndoMap(G, p["map"])
    if "g" in p or "h" in p:
        g = GroupEndoMap(G, p.get("g", p["map"]))
        ok = L.record("averaging pair", averaging_pair_failure(f, g)) and ok
    else:
        g = f
        sides = [s for s in ("left", "right") if f"{s}-averaging" in claims] or ["left", "right"]
        for s in sides:
            fail = (left_avg_failure if s == "left" else right_avg_failure)(f)
            ok = L.record(f"{s} averaging", fail) and ok
    if "compatible" in claims or "h" in p:
        common = f.kernel & g.kernel
        ok = L.record("compatible", None if common else Failure("compatible", (), "ker f ∩ ker g is empty")) and ok
    if "h" in p and ok:
        h = GroupEndoMap(G, p["h"])
        pair = AveragingPair(f, g, True)
        if p.get("side", "left") == "left":
            ok = L.record("h left averaging", left_avg_failure(h)) and ok
            ok = L.record("AD1-AD3", left_avg_brace_failure(pair, h)) and ok
        else:
            ok = L.record("h right averaging", right_avg_failure(h)) and ok
            ok = L.record("AD1'-AD3'", right_avg_brace_failure(pair, h)) and ok
    return ok


def verification_ledger(doc: StructureDocument) -> Ledger:
    """Run every axiom of the document's kind plus any claimed properties."""
    L = Ledger(doc.kind)
    p, claims = doc.payload, doc.claims
    if doc.kind == "group":
        _group(L, _table(p["table"]), p["identity"], claims)
    elif doc.kind == "shelf":
        _shelf(L, _table(p["tri"]), claims)
    elif doc.kind == "digroup":
        _digroup(L, _table(p["vdash"]), _table(p["dashv"]), claims)
    elif doc.kind == "diskew":
        _diskew(L, p, claims)
    elif doc.kind == "solution":
        _solution(L, SolutionTable(p["lambda"], p["rho"]), claims)
    elif doc.kind == "hemipair":
        _hemipair(L, p)
    elif doc.kind == "avgmap":
        _avgmap(L, p, claims)
    return L


# -- relabelling (for seeded spot checks) --------------------------------------

def _relabel_table(t: list, perm: Map) -> list:
    inv = inverse(perm)
    n = len(t)
    return [[perm[t[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]


def _relabel_maps(maps: list, perm: Map) -> list:
    """Family ``m_a`` indexed by the carrier, acting on the same carrier."""
    inv = inverse(perm)
    return [[perm[maps[inv[a]][inv[b]]] for b in range(len(perm))] for a in range(len(perm))]


def relabel_document(doc: StructureDocument, perm: Map) -> StructureDocument:
    """Transport a document along a bijection of its (base) carrier."""
    p = doc.payload
    inv = inverse(perm)
    if doc.kind == "group":
        q = {"n": p["n"], "table": _relabel_table(p["table"], perm), "identity": perm[p["identity"]]}
    elif doc.kind == "shelf":
        q = {"n": p["n"], "tri": _relabel_table(p["tri"], perm)}
    elif doc.kind == "digroup":
        q = {"n": p["n"], "vdash": _relabel_table(p["vdash"], perm), "dashv": _relabel_table(p["dashv"], perm)}
    elif doc.kind == "diskew":
        d = p["digroup"]
        q = {
            "digroup": {"n": d["n"], "vdash": _relabel_table(d["vdash"], perm), "dashv": _relabel_table(d["dashv"], perm)},
            "circ": _relabel_table(p["circ"], perm),
            "zero": perm[p["zero"]],
        }
    elif doc.kind == "solution":
        q = {"n": p["n"], "lambda": _relabel_maps(p["lambda"], perm), "rho": _relabel_maps(p["rho"], perm)}
    elif doc.kind == "hemipair":
        q = {
            "shelf": {"n": p["shelf"]["n"], "tri": _relabel_table(p["shelf"]["tri"], perm)},
            "twist": _relabel_maps(p["twist"], perm),
            "E": p["E"],
            "psi": [p["psi"][inv[a]] for a in range(len(perm))],
            "sigma": [p["sigma"][inv[a]] for a in range(len(perm))],
        }
    elif doc.kind == "avgmap":
        g = p["group"]
        q = {"group": {"n": g["n"], "table": _relabel_table(g["table"], perm), "identity": perm[g["identity"]]}}
        for key in ("map", "g", "h"):
            if key in p:
                q[key] = [perm[p[key][inv[a]]] for a in range(len(perm))]
        if "side" in p:
            q["side"] = p["side"]
    else:
        raise ValueError(doc.kind)
    names = None if doc.names is None or doc.kind == "hemipair" else tuple(doc.names[inv[a]] for a in range(len(perm)))
    out = StructureDocument(doc.kind, q, names, doc.claims)
    return validate(out.as_json())


def base_size(doc: StructureDocument) -> int:
    p = doc.payload
    return {
        "group": lambda: p["n"],
        "shelf": lambda: p["n"],
        "digroup": lambda: p["n"],
        "diskew": lambda: p["digroup"]["n"],
        "solution": lambda: p["n"],
        "hemipair": lambda: p["shelf"]["n"],
        "avgmap": lambda: p["group"]["n"],
    }[doc.kind]()
