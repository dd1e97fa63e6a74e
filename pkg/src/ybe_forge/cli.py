"""``ybe-forge`` command line.

Exit status: 0 success, 1 an axiom or precondition fails, 2 malformed input,
3 an internal cross-check disagreed (a library bug, never expected).
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from typing import Callable, Iterable, Optional, Sequence

from . import groups
from .averaging import (
    AveragingPair,
    GroupEndoMap,
    averaging_brace_data,
    compatible_pairs,
    digroup_from_pair,
    diskew_from_left_avg,
    diskew_from_right_avg,
    enumerate_avg,
    enumerate_left_avg,
    enumerate_right_avg,
    fg_commuting_digroup,
    idempotent_endomorphism,
    is_averaging_pair,
    kernel_is,
    nonempty_kernel,
)
from .digroup import GDigroup, anti_isomorphism, decompose, from_group_action
from .diskew import DiSkewBrace, almost_trivial_brace, diskew_solution, is_di_brace, is_skew_brace, trivial_brace
from .hemi import constant_hemi_pair, derived_hemi_pair, diskew_decompose, diskew_order, hemi_order, hemi_solution
from .ledger import base_size, relabel_document, verification_ledger
from .selfdist import (
    Shelf,
    conj_order_formula,
    conj_quandle,
    conjugation_rack,
    core_order_formula,
    core_quandle,
    default_bound,
    enumerate_racks,
    enumerate_shelves,
    order_report,
    trivial_quandle,
)
from .serialize import AveragingData, MalformedDocument, StructureDocument, decode, emit, encode, load
from .solution import (
    SolutionTable,
    Twist,
    _componentwise_failure,
    derived_shelf,
    derived_solution,
    enumerate_left_nd_solutions,
    enumerate_twists,
    is_bijective,
    nondegeneracy,
    right_nd_via_square,
    solution_from_twist,
    solution_order,
    twist_of,
)
from .tables import AxiomError, GroupTable, InconsistencyError, inverse

EXIT_OK, EXIT_AXIOM, EXIT_MALFORMED, EXIT_INTERNAL = 0, 1, 2, 3


class Precondition(Exception):
    """A recipe cannot be applied to its inputs."""


# -- output --------------------------------------------------------------------

class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def line(self, text: str = "") -> None:
        print(text)

    def report(self, data: dict, lines: Iterable[str]) -> None:
        if self.as_json:
            print(json.dumps(data, sort_keys=True, ensure_ascii=False))
        else:
            for text in lines:
                print(text)


def _write_doc(doc: StructureDocument, path: Optional[str]) -> None:
    text = emit(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- argument helpers ----------------------------------------------------------

def _group(spec: str) -> GroupTable:
    """Corpus name (``S3``, ``Z6``, ``V4``...) or a group document path."""
    if os.path.exists(spec):
        doc = load(spec)
        if doc.kind == "avgmap":
            return decode(doc).group
        if doc.kind != "group":
            raise MalformedDocument(f"{spec}: expected a group document, got {doc.kind}")
        return decode(doc)
    try:
        return groups.by_name(spec)
    except KeyError:
        raise MalformedDocument(f"{spec!r} is neither a file nor a known group name") from None


def _indices(text: str, size: int, names: Optional[Sequence[str]] = None) -> tuple[int, ...]:
    """JSON list of indices, or comma-separated indices / element names."""
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"bad list {text!r}: {exc}") from None
    else:
        items = [t.strip() for t in text.split(",")] if text else []
    out = []
    for item in items:
        if isinstance(item, int) or (isinstance(item, str) and item.isdigit()):
            out.append(int(item))
        elif names is not None and item in names:
            out.append(list(names).index(item))
        else:
            raise MalformedDocument(f"unknown element {item!r}")
    if any(not 0 <= x < size for x in out):
        raise MalformedDocument(f"index out of range 0..{size - 1} in {text!r}")
    return tuple(out)


def _map(G: GroupTable, text: str) -> GroupEndoMap:
    images = _indices(text, G.n, G.names)
    if len(images) != G.n:
        raise MalformedDocument(f"a self-map of a group of order {G.n} needs {G.n} images")
    return GroupEndoMap(G, images)


def _json_arg(text: str):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"bad JSON argument: {exc}") from None


def _load_kind(path: str, *kinds: str):
    doc = load(path)
    if doc.kind not in kinds:
        raise MalformedDocument(f"{path}: expected {' or '.join(kinds)}, got {doc.kind}")
    return doc, decode(doc)


def _pair(G: GroupTable, args) -> AveragingPair:
    f = _map(G, args.f)
    g = _map(G, args.g) if args.g else f
    p = is_averaging_pair(f, g)
    if not p.compatible:
        raise Precondition("ker f ∩ ker g is empty, the pair is not compatible")
    return p


def _solution_claims(r: SolutionTable) -> tuple[str, ...]:
    left, right = nondegeneracy(r)
    flags = (("bijective", is_bijective(r)), ("left-nondegenerate", left), ("right-nondegenerate", right))
    return tuple(name for name, ok in flags if ok)


def _shelf_claims(S: Shelf) -> tuple[str, ...]:
    return ("rack", "quandle") if S.is_quandle else ("rack",) if S.is_rack else ()


def _solution_doc(r: SolutionTable) -> StructureDocument:
    return encode(r, claims=_solution_claims(r))


def _shelf_doc(S: Shelf, names=None) -> StructureDocument:
    return encode(S, names=names, claims=_shelf_claims(S))


def _diskew_doc(B: DiSkewBrace) -> StructureDocument:
    claims = tuple(c for c, ok in (("skew-brace", is_skew_brace(B)), ("di-brace", is_di_brace(B))) if ok)
    return encode(B, claims=claims)


# -- verify --------------------------------------------------------------------

def cmd_verify(args, out: Out) -> int:
    doc = load(args.file)
    if args.kind and args.kind != doc.kind:
        raise MalformedDocument(f"document kind is {doc.kind}, not {args.kind}")
    ledger = verification_ledger(doc)
    spot = []
    if args.spot_checks:
        rng = random.Random(args.seed)
        n = base_size(doc)
        for _ in range(args.spot_checks):
            perm = list(range(n))
            rng.shuffle(perm)
            again = verification_ledger(relabel_document(doc, perm)).passed
            if again != ledger.passed:
                raise InconsistencyError(f"verdict changes under the relabelling {perm}")
            spot.append(perm)
    data = ledger.as_dict()
    data["relabel_checks"] = spot
    lines = []
    for e in ledger.entries:
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[e.ok]
        text = f"{status} {e.check}"
        if e.failure is not None:
            text += f": witness {list(e.failure.witness)}"
            if e.failure.detail:
                text += f" ({e.failure.detail})"
        lines.append(text)
    if spot:
        lines.append(f"verdict stable under {len(spot)} random relabellings (seed {args.seed})")
    lines.append(f"{doc.kind}: {'pass' if ledger.passed else 'FAIL'}")
    out.report(data, lines)
    return EXIT_OK if ledger.passed else EXIT_AXIOM


# -- construct -----------------------------------------------------------------

def _digroup_arg(path: str) -> GDigroup:
    doc, obj = _load_kind(path, "digroup", "diskew")
    return obj if doc.kind == "digroup" else obj.digroup


def _construct(args) -> StructureDocument:
    recipe = args.recipe
    if recipe == "group":
        G = _group(args.group)
        return encode(G, claims=("abelian",) if G.is_abelian() else ())
    if recipe in ("conj-quandle", "core-quandle"):
        G = _group(args.group)
        S = (conj_quandle if recipe == "conj-quandle" else core_quandle)(G)
        return _shelf_doc(S, G.names)
    if recipe == "trivial-quandle":
        return _shelf_doc(trivial_quandle(args.size))
    if recipe == "conj-rack":
        return _shelf_doc(conjugation_rack(_digroup_arg(args.digroup)))
    if recipe == "action-digroup":
        G = _group(args.group)
        action = _json_arg(args.action)
        if not (isinstance(action, list) and len(action) == G.n):
            raise MalformedDocument(f"--action needs one permutation of the points per group element ({G.n})")
        return encode(from_group_action(G, args.points, action))
    if recipe == "pair-digroup":
        return encode(digroup_from_pair(_pair(_group(args.group), args)))
    if recipe == "fg-digroup":
        G = _group(args.group)
        try:
            return encode(fg_commuting_digroup(_map(G, args.f), _map(G, args.g)))
        except ValueError as exc:
            raise Precondition(str(exc)) from None
    if recipe in ("trivial-brace", "almost-trivial-brace"):
        D = _digroup_arg(args.digroup)
        return _diskew_doc((trivial_brace if recipe == "trivial-brace" else almost_trivial_brace)(D))
    if recipe == "avg-brace":
        G = _group(args.group)
        p = _pair(G, args)
        h = _map(G, args.h)
        try:
            B = (diskew_from_left_avg if args.side == "left" else diskew_from_right_avg)(p, h)
        except ValueError as exc:
            if isinstance(exc, AxiomError):
                raise
            raise Precondition(str(exc)) from None
        return _diskew_doc(B)
    if recipe == "avg-data":
        G = _group(args.group)
        f = _map(G, args.f)
        g = _map(G, args.g) if args.g else None
        h = _map(G, args.h) if args.h else None
        return encode(AveragingData(G, f, g, h, args.side))
    if recipe == "diskew-solution":
        _, B = _load_kind(args.diskew, "diskew")
        return _solution_doc(diskew_solution(B))
    if recipe == "derived-solution":
        _, S = _load_kind(args.shelf, "shelf")
        return _solution_doc(derived_solution(S))
    if recipe == "twist-solution":
        _, S = _load_kind(args.shelf, "shelf")
        phi = _json_arg(args.twist)
        if not (isinstance(phi, list) and len(phi) == S.n and all(len(x) == S.n for x in phi)):
            raise MalformedDocument(f"--twist needs {S.n} maps on {S.n} points")
        return _solution_doc(solution_from_twist(Twist(S, tuple(tuple(x) for x in phi))))
    if recipe == "derived-hemi":
        _, r = _load_kind(args.solution, "solution")
        try:
            return encode(derived_hemi_pair(r))
        except ValueError as exc:
            raise Precondition(str(exc)) from None
    if recipe == "constant-hemi":
        _, r = _load_kind(args.solution, "solution")
        if not (is_bijective(r) and nondegeneracy(r)[0]):
            raise Precondition("needs a bijective left non-degenerate solution")
        psi, sigma = _json_arg(args.psi), _json_arg(args.sigma)
        return encode(constant_hemi_pair(twist_of(r), tuple(psi), tuple(sigma)))
    if recipe == "hemi-solution":
        _, H = _load_kind(args.hemipair, "hemipair")
        return _solution_doc(hemi_solution(H))
    raise MalformedDocument(f"unknown recipe {recipe!r}")


RECIPES = {
    "group": "a corpus group (--group)",
    "conj-quandle": "a ▷ b = a⁻¹ba on --group",
    "core-quandle": "a ▷ b = ab⁻¹a on --group",
    "trivial-quandle": "a ▷ b = b on --size points",
    "conj-rack": "conjugation rack of --digroup",
    "action-digroup": "digroup on G × points from a right action (--group, --points, --action)",
    "pair-digroup": "digroup of a compatible averaging pair (--group, --f, [--g])",
    "fg-digroup": "digroup of commuting idempotent endomorphisms (--group, --f, --g)",
    "trivial-brace": "a ∘ b = a ⊢ b on --digroup",
    "almost-trivial-brace": "a ∘ b = b ⊣ a on --digroup",
    "avg-brace": "di-skew brace from averaging data (--group, --f, [--g], --h, [--side])",
    "avg-data": "averaging map/pair/triple document (--group, --f, [--g], [--h], [--side])",
    "diskew-solution": "solution of --diskew",
    "derived-solution": "r(a,b) = (b, b ▷ a) of --shelf",
    "twist-solution": "solution of --shelf twisted by --twist",
    "derived-hemi": "hemi pair (L, λ) of a bijective left non-degenerate --solution",
    "constant-hemi": "hemi pair with constant ψ = --psi, σ = --sigma over --solution",
    "hemi-solution": "hemi-semidirect product solution of --hemipair",
}


def cmd_construct(args, out: Out) -> int:
    _write_doc(_construct(args), args.output)
    return EXIT_OK


# -- order ---------------------------------------------------------------------

def _bounded(value: Optional[int], bound: int) -> str:
    return str(value) if value is not None else f"exceeds bound {bound}"


def cmd_order(args, out: Out) -> int:
    bound = args.bound
    doc = load(args.file)
    obj = decode(doc)
    data: dict = {"kind": doc.kind, "bound": bound}
    lines: list[str] = []
    if doc.kind == "group":
        G = obj
        if G.n <= 1:
            raise Precondition("order formulas need a non-trivial group")
        for label, S, formula, expr in (
            ("conj", conj_quandle(G), conj_order_formula(G), "2·exp(G/Z(G))"),
            ("core", core_quandle(G), core_order_formula(G), "exp(G)"),
        ):
            rep = order_report(S, bound)
            data[label] = {"order": formula, "formula": expr, "M": rep.M, "N": rep.N,
                           "iterated": rep.iterated, "agrees": rep.iterated == formula}
            lines.append(f"{label} quandle: M = {_bounded(rep.M, bound)}, N = {_bounded(rep.N, bound)}")
            lines.append(f"{label} quandle: order {formula} ({expr}); iteration {_bounded(rep.iterated, 2 * bound + 1)}: "
                         f"{'agrees' if rep.iterated == formula else 'DISAGREES'}")
    elif doc.kind == "shelf":
        S = obj
        if not S.is_rack:
            raise Precondition("order formulas need a rack")
        if S.n == 1:
            data.update(order=1, formula="one element", iterated=1)
            lines.append("order 1 (one element)")
        else:
            rep = order_report(S, bound)
            data.update(M=rep.M, N=rep.N, formula=rep.case, order=rep.order, iterated=rep.iterated, exceeds_bound=rep.order is None)
            if S.is_quandle:
                lines.append(f"M = {_bounded(rep.M, bound)}, N = {_bounded(rep.N, bound)}")
            else:
                lines.append(f"N = {_bounded(rep.N, bound)}")
            lines.append(f"order {_bounded(rep.order, bound)} ({rep.case})" if rep.order else f"order exceeds bound {bound}")
            lines.append(f"iteration: {_bounded(rep.iterated, 2 * bound + 1)}, {'agrees' if rep.agrees else 'DISAGREES'}")
    elif doc.kind == "solution":
        r = obj
        it = solution_order(r, 2 * bound + 1)
        data.update(order=it, exceeds_bound=it is None)
        lines.append(f"order {_bounded(it, 2 * bound + 1)} (direct iteration)")
        if is_bijective(r) and nondegeneracy(r)[0] and r.n > 1:
            rep = order_report(derived_shelf(r), bound)
            if rep.order is not None and it is not None and rep.order != it:
                raise InconsistencyError("a left non-degenerate solution and its derived solution differ in order")
            data.update(M=rep.M, N=rep.N, formula=rep.case, derived_order=rep.order)
            lines.append(f"derived shelf: M = {_bounded(rep.M, bound)}, N = {_bounded(rep.N, bound)}, "
                         f"order {_bounded(rep.order, bound)} ({rep.case})")
    elif doc.kind == "diskew":
        rep = diskew_order(obj, bound)
        data.update(exp_quotient=rep.exp_quotient, m_psi=rep.m_psi, formula=rep.formula, order=rep.order,
                    iterated=rep.iterated, exceeds_bound=rep.order is None)
        lines.append(f"m_▷ = exp(G/Z(G)) = {rep.exp_quotient}, m_ψ = {rep.m_psi if rep.m_psi is not None else 'n/a'}")
        if rep.order is None:
            lines.append(f"order exceeds bound {bound}")
        else:
            shown = rep.formula if rep.formula.startswith("2·lcm") else rep.formula.split(" = ")[0]
            lines.append(f"order {rep.order} ({shown})")
        lines.append(f"iteration: {_bounded(rep.iterated, 2 * bound)}, "
                     f"{'agrees' if rep.iterated == rep.order else 'DISAGREES'}")
    elif doc.kind == "hemipair":
        try:
            rep = hemi_order(obj, bound)
        except ValueError as exc:
            raise Precondition(str(exc)) from None
        data.update(m_shelf=rep.m_shelf, m_psi=rep.m_psi, formula=rep.formula, order=rep.order,
                    iterated=rep.iterated, exceeds_bound=rep.order is None)
        lines.append(f"m_▷ = {_bounded(rep.m_shelf, bound)}, m_ψ = {_bounded(rep.m_psi, bound)}")
        lines.append(f"order {rep.order} ({rep.formula})" if rep.order else f"order exceeds bound {bound}")
        lines.append(f"iteration: {_bounded(rep.iterated, 2 * bound)}, {'agrees' if rep.iterated == rep.order else 'DISAGREES'}")
    else:
        raise Precondition(f"no order report for {doc.kind} documents")
    out.report(data, lines)
    return EXIT_OK


# -- decompose -----------------------------------------------------------------

def cmd_decompose(args, out: Out) -> int:
    path = args.file or args.diskew or args.digroup
    if not path:
        raise MalformedDocument("decompose needs a document")
    doc, obj = _load_kind(path, "digroup", "diskew")
    if doc.kind == "digroup":
        dec = decompose(obj, args.xi)
        psi = anti_isomorphism(obj, args.xi)
        data = {"xi": dec.base_unit, "halo": list(obj.halo), "G": list(dec.G), "H": list(dec.H),
                "g": list(dec.g), "e": list(dec.e), "f": list(dec.f), "h": list(dec.h), "anti_isomorphism": list(psi)}
        lines = [f"ξ = {dec.base_unit}, halo {list(obj.halo)}, D ⊢ ξ = {list(dec.G)}, ξ ⊣ D = {list(dec.H)}"]
        lines += [f"{a} = {dec.g[a]} ⊢ {dec.e[a]} = {dec.f[a]} ⊣ {dec.h[a]}" for a in range(obj.n)]
        lines.append(f"anti-isomorphism (D,⊢) -> (D,⊣): {list(psi)}")
        out.report(data, lines)
        return EXIT_OK
    dec = diskew_decompose(obj)
    docs = {
        "skew_brace": _diskew_doc(dec.skew_brace),
        "hemipair": encode(dec.hemi),
        "hemi_solution": _solution_doc(hemi_solution(dec.hemi)),
    }
    F = {"F": list(dec.F), "G": list(dec.G), "E": list(dec.E)}
    data = {key: d.as_json() for key, d in docs.items()}
    data.update(F=F, psi=[list(p) for p in dec.hemi.psi], sigma=[list(s) for s in dec.hemi.sigma],
                psi_mirrored=[list(p) for p in dec.psi_theorem], psi_conventions_agree=dec.psi_conventions_agree,
                mirrored_psi_is_hemi_pair=dec.theorem_psi_is_hemi_pair)
    lines = [
        f"groupal part G = {list(dec.G)} (order {len(dec.G)}), idempotents E = {list(dec.E)}",
        f"ψ_g(e) = g⁻¹ ⊢ e ⊣ g: {data['psi']}",
        f"σ_g(e) = λ_g(e): {data['sigma']}",
        f"F(a) = (g_a, e_a) as index g*|E|+e: {list(dec.F)}",
        f"mirrored ψ_g(e) = g ⊢ e ⊣ g⁻¹ {'agrees' if dec.psi_conventions_agree else 'differs'}"
        + ("" if dec.psi_conventions_agree else f" and is {'' if dec.theorem_psi_is_hemi_pair else 'not '}a hemi pair"),
        "(F×F) r_D = r_hemi (F×F): verified",
    ]
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for key, d in docs.items():
            _write_doc(d, os.path.join(args.out_dir, f"{key}.json"))
        for key, value in (("F", F), ("psi", data["psi"]), ("sigma", data["sigma"])):
            with open(os.path.join(args.out_dir, f"{key}.json"), "w", encoding="utf-8") as fh:
                fh.write(json.dumps(value, sort_keys=True) + "\n")
        lines.append(f"wrote skew_brace, hemipair, hemi_solution, F, psi, sigma to {args.out_dir}")
    out.report(data, lines)
    return EXIT_OK


# -- enumerate -----------------------------------------------------------------

def _avg_stream(args) -> Iterable[StructureDocument]:
    G = _group(args.group)
    preds: list[Callable[[GroupEndoMap], bool]] = []
    if args.idempotent_endo:
        preds.append(idempotent_endomorphism)
    if args.nonempty_kernel:
        preds.append(nonempty_kernel)
    if args.kernel is not None:
        preds.append(kernel_is(_indices(args.kernel, G.n, G.names)))
    pred = (lambda m: all(p(m) for p in preds)) if preds else None
    source = {"both": enumerate_avg, "left": enumerate_left_avg, "right": enumerate_right_avg}[args.side]
    claims = {"both": ("left-averaging", "right-averaging"), "left": ("left-averaging",), "right": ("right-averaging",)}
    try:
        found = source(G, pred, limit=args.limit)
    except ValueError as exc:
        raise Precondition(str(exc)) from None
    for m in found:
        yield encode(m, claims=claims[args.side])


def _enumerate(args) -> Iterable[StructureDocument]:
    what = args.what
    if what in ("racks", "quandles", "shelves"):
        source = enumerate_shelves(args.size) if what == "shelves" else enumerate_racks(args.size)
        for S in source:
            if what != "quandles" or S.is_quandle:
                yield _shelf_doc(S)
    elif what == "avg":
        yield from _avg_stream(args)
    elif what == "pairs":
        for p in compatible_pairs(_group(args.group), args.limit):
            yield encode(p, claims=("compatible",))
    elif what == "braces":
        seen = set()
        for datum in averaging_brace_data(_group(args.group), args.limit):
            B = datum.brace()
            key = (B.digroup.vdash, B.digroup.dashv, B.circ)
            if key not in seen:
                seen.add(key)
                yield _diskew_doc(B)
    elif what == "twists":
        _, S = _load_kind(args.shelf, "shelf")
        for T in enumerate_twists(S):
            yield _solution_doc(solution_from_twist(T, check=False))
    elif what == "solutions":
        for r in enumerate_left_nd_solutions(args.size):
            yield _solution_doc(r)


def cmd_enumerate(args, out: Out) -> int:
    if args.what in ("racks", "quandles", "shelves", "solutions") and args.size is None:
        raise MalformedDocument(f"enumerate {args.what} needs --size")
    if args.what in ("avg", "pairs", "braces") and not args.group:
        raise MalformedDocument(f"enumerate {args.what} needs --group")
    if args.what == "twists" and not args.shelf:
        raise MalformedDocument("enumerate twists needs --shelf")
    count = 0
    for doc in _enumerate(args):
        count += 1
        if not args.count:
            print(emit(doc))
    if args.count:
        print(json.dumps({"count": count}) if out.as_json else count)
    return EXIT_OK


# -- ybe-check -----------------------------------------------------------------

def cmd_ybe_check(args, out: Out) -> int:
    doc, r = _load_kind(args.file, "solution")
    ledger = verification_ledger(StructureDocument(doc.kind, doc.payload, doc.names))
    ybe = ledger.passed
    if ybe != (_componentwise_failure(r) is None):
        raise InconsistencyError("component and braid forms of the equation disagree")
    bij = is_bijective(r)
    left, right = nondegeneracy(r)
    data = {"ybe": ybe, "checks": ledger.as_dict()["entries"], "bijective": bij,
            "left_nondegenerate": left, "right_nondegenerate": right}
    lines = [f"{'PASS' if e.ok else 'FAIL'} {e.check}" + (f": witness {list(e.failure.witness)}" if e.failure else "")
             for e in ledger.entries]
    lines.append(f"bijective: {bij}, left non-degenerate: {left}, right non-degenerate: {right}")
    if ybe and bij and left:
        crit = right_nd_via_square(r)
        data["square_map_criterion"] = crit
        lines.append(f"square map bijective: {crit} (matches direct right non-degeneracy)")
    if bij:
        o = solution_order(r, 2 * args.bound + 1)
        data["order"] = o
        lines.append(f"order {_bounded(o, 2 * args.bound + 1)}")
    lines.append("Yang-Baxter equation: " + ("holds" if ybe else "FAILS"))
    out.report(data, lines)
    return EXIT_OK if ybe else EXIT_AXIOM


# -- export --------------------------------------------------------------------

_S3_F = (0, 2, 2, 0, 0, 2)  # (23),(12),(13) -> (12); rotations -> id


def _s3_pair() -> AveragingPair:
    return is_averaging_pair(_S3_F, _S3_F, groups.s3())


def _klein_pair() -> AveragingPair:
    return is_averaging_pair((0, 0, 2, 2), (0, 0, 3, 3), groups.klein())


def _lyz_data() -> AveragingData:
    V = groups.klein()
    return AveragingData(V, GroupEndoMap(V, (0, 0, 2, 2)), None, GroupEndoMap(V, (0, 0, 3, 3)), "left")


def _s3_points_digroup() -> GDigroup:
    G = groups.s3()
    perms = sorted(itertools.permutations(range(3)))
    return from_group_action(G, 3, [inverse(p) for p in perms])


def _s3_brace() -> DiSkewBrace:
    return diskew_from_left_avg(_s3_pair(), _S3_F)


EXAMPLES: dict[str, Callable[[], StructureDocument]] = {
    "s3-averaging-operator": lambda: encode(GroupEndoMap(groups.s3(), _S3_F), claims=("left-averaging", "right-averaging")),
    "s3-averaging-digroup": lambda: encode(digroup_from_pair(_s3_pair())),
    "s3-averaging-brace": lambda: _diskew_doc(_s3_brace()),
    "s3-averaging-solution": lambda: _solution_doc(diskew_solution(_s3_brace())),
    "s3-averaging-hemipair": lambda: encode(diskew_decompose(_s3_brace()).hemi),
    "s3-trivial-skew-brace": lambda: _diskew_doc(trivial_brace(GDigroup.from_group(groups.s3()))),
    "z6-trivial-skew-brace": lambda: _diskew_doc(trivial_brace(GDigroup.from_group(groups.cyclic(6)))),
    "s3-conj-quandle": lambda: _shelf_doc(conj_quandle(groups.s3()), groups.s3().names),
    "s3-core-quandle": lambda: _shelf_doc(core_quandle(groups.s3()), groups.s3().names),
    "klein-pair": lambda: encode(_klein_pair(), claims=("compatible",)),
    "klein-pair-digroup": lambda: encode(digroup_from_pair(_klein_pair())),
    "v4-lyz-data": lambda: encode(_lyz_data()),
    "v4-lyz-brace": lambda: _diskew_doc(diskew_from_left_avg(single_pair_of(_lyz_data()), _lyz_data().h)),
    "s3-points-digroup": lambda: encode(_s3_points_digroup()),
    "s3-points-almost-trivial-brace": lambda: _diskew_doc(almost_trivial_brace(_s3_points_digroup())),
}


def single_pair_of(data: AveragingData) -> AveragingPair:
    return is_averaging_pair(data.f, data.g if data.g is not None else data.f)


def cmd_export(args, out: Out) -> int:
    if args.list or not args.name:
        names = sorted(EXAMPLES) + [f"group:{g}" for g in groups.CORPUS]
        for name in names:
            print(name)
        return EXIT_OK
    if args.name.startswith("group:"):
        G = _group(args.name[len("group:"):])
        doc = encode(G, claims=("abelian",) if G.is_abelian() else ())
    elif args.name in EXAMPLES:
        doc = EXAMPLES[args.name]()
    else:
        raise MalformedDocument(f"unknown example {args.name!r}; see `export --list`")
    _write_doc(doc, args.output)
    return EXIT_OK


# -- wiring --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")
    common.add_argument("--bound", type=int, default=None, help="order search bound (default $YBE_FORGE_BOUND or 64)")

    parser = argparse.ArgumentParser(prog="ybe-forge", description="Finite g-digroups, di-skew braces and Yang-Baxter solutions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the full axiom ledger of a document")
    p.add_argument("file")
    p.add_argument("--kind", choices=sorted(verification_kinds()))
    p.add_argument("--spot-checks", type=int, default=0, help="re-verify after this many random relabellings")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("construct", parents=[common], help="build a document from a recipe",
                       epilog="recipes: " + "; ".join(f"{k}: {v}" for k, v in RECIPES.items()))
    p.add_argument("recipe", choices=list(RECIPES))
    for opt in ("--group", "--digroup", "--diskew", "--shelf", "--solution", "--hemipair",
                "--f", "--g", "--h", "--action", "--twist", "--psi", "--sigma"):
        p.add_argument(opt)
    p.add_argument("--points", type=int)
    p.add_argument("--size", type=int)
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_construct)

    p = sub.add_parser("order", parents=[common], help="order of the associated solution")
    p.add_argument("file")
    p.set_defaults(run=cmd_order)

    p = sub.add_parser("decompose", parents=[common], help="bar decomposition of a digroup or hemi decomposition of a di-skew brace")
    p.add_argument("file", nargs="?")
    p.add_argument("--diskew")
    p.add_argument("--digroup")
    p.add_argument("--xi", type=int)
    p.add_argument("--out-dir")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("enumerate", parents=[common], help="stream verified instances as JSON lines")
    p.add_argument("what", choices=("racks", "quandles", "shelves", "avg", "pairs", "braces", "twists", "solutions"))
    p.add_argument("--size", type=int)
    p.add_argument("--group")
    p.add_argument("--shelf")
    p.add_argument("--side", choices=("both", "left", "right"), default="both")
    p.add_argument("--idempotent-endo", action="store_true")
    p.add_argument("--nonempty-kernel", action="store_true")
    p.add_argument("--kernel")
    p.add_argument("--limit", type=int, default=8, help="largest group order to enumerate over")
    p.add_argument("--count", action="store_true", help="print only the number of instances")
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("ybe-check", parents=[common], help="Yang-Baxter and non-degeneracy report for a solution")
    p.add_argument("file")
    p.set_defaults(run=cmd_ybe_check)

    p = sub.add_parser("export", parents=[common], help="write a named example document")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_export)
    return parser


def verification_kinds() -> tuple[str, ...]:
    from .serialize import KINDS

    return KINDS


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.bound is None:
        args.bound = default_bound()
    out = Out(args.json)
    try:
        return args.run(args, out)
    except MalformedDocument as exc:
        out.report({"error": "malformed", "message": str(exc)}, [f"malformed input: {exc}"])
        return EXIT_MALFORMED
    except AxiomError as exc:
        f = exc.failure
        out.report({"error": "axiom", "witness": f.as_dict()}, [f"axiom failure: {f}"])
        return EXIT_AXIOM
    except Precondition as exc:
        out.report({"error": "precondition", "message": str(exc)}, [f"precondition failed: {exc}"])
        return EXIT_AXIOM
    except InconsistencyError as exc:
        out.report({"error": "internal", "message": str(exc)}, [f"internal cross-check failed: {exc}"])
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
