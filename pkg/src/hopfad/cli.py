"""``hopfad`` command line: verify, adfin, fc, dietzmann, tensorfin.

Exit codes: 0 every check passed, 1 some check failed, 2 only evidence or
budget outcomes besides passes, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import __version__
from .errors import HopfadError, ParseError
from .scalar import QQ, Cyclotomic, Field, parse_field

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_EVIDENCE, EXIT_USAGE = 0, 1, 2, 3
STATUSES = ("pass", "fail", "evidence", "budget-exceeded")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- report -------------------------------------------------------------------------


RESULT_TAGS = {
    "axiom": "Hopf algebra axioms",
    "identity.adjoint-coproduct": "coproduct of the adjoint action",
    "identity.module-algebra": "adjoint action is a module-algebra action",
    "identity.multiplication-recovery": "product recovered from the adjoint action",
    "identity.cocommutative-equivariance": "coproduct is ad-equivariant for cocommutative H",
    "adfin.finite-dimensional": "finite-dimensional H is locally finite under ad",
    "adfin.window": "locally finite part is the whole algebra",
    "adfin.left-coideal": "locally finite part is a left coideal subalgebra",
    "adfin.antipode-stable": "locally finite part is antipode-stable when H is virtually cocommutative",
    "adfin.not-cocommutative": "the quotient is not cocommutative",
    "evidence.ad-E-chain": "locally finite part need not be a Hopf subalgebra",
    "evidence.orbit-of-K": "locally finite part need not be a Hopf subalgebra",
    "fc.members": "locally finite part of kG is spanned by the FC-center",
    "fc.ad-module-agreement": "locally finite part of kG is spanned by the FC-center",
    "dietzmann.filtration": "finitely many ad-stable coideals generate a finite-dimensional subalgebra",
    "dietzmann.straighten": "finitely many ad-stable coideals generate a finite-dimensional subalgebra",
    "tensorfin.agreement": "fin(V⊗W) = fin V ⊗ fin W over a virtually pointed H",
}


def tag_for(check_id: str) -> str:
    """The result tag of a check id; the longest dotted prefix in RESULT_TAGS wins."""
    parts = check_id.split(".")
    for n in range(len(parts), 0, -1):
        tag = RESULT_TAGS.get(".".join(parts[:n]))
        if tag is not None:
            return tag
    raise KeyError(f"no result tag for check {check_id!r}")


class Report:
    """Named check results; serialized ordered by check id."""

    def __init__(self, command: Sequence[str]):
        self.command = list(command)
        self.checks: dict[str, dict] = {}

    def add(self, check_id: str, status: str, data=None):
        tag = tag_for(check_id)
        if status not in STATUSES:
            raise ValueError(status)
        if check_id in self.checks:
            raise ValueError(f"duplicate check id {check_id}")
        self.checks[check_id] = {"id": check_id, "tag": tag, "status": status, "data": _jsonable(data)}

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": __version__,
            "command": self.command,
            "checks": [self.checks[k] for k in sorted(self.checks)],
        }

    def to_json(self) -> str:
        return dumps(self.as_dict())

    def exit_code(self) -> int:
        st = {c["status"] for c in self.checks.values()}
        if "fail" in st:
            return EXIT_FAIL
        if st & {"evidence", "budget-exceeded"}:
            return EXIT_EVIDENCE
        return EXIT_PASS

    def to_table(self) -> str:
        rows = [(c["id"], c["status"], c["tag"]) for c in (self.checks[k] for k in sorted(self.checks))]
        w0 = max([len(r[0]) for r in rows] + [5])
        w1 = max([len(r[1]) for r in rows] + [6])
        lines = [f"{'check'.ljust(w0)}  {'status'.ljust(w1)}  result"]
        lines += [f"{a.ljust(w0)}  {b.ljust(w1)}  {c}" for a, b, c in rows]
        return "\n".join(lines)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not used in reports")
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


# -- builtins ------------------------------------------------------------------------


def builtin_algebra(name: str, field: Field | None):
    """``sweedler``, ``taft:n``, ``uqsl2:n``, ``group:<descriptor>``, ``dual:<builtin>``."""
    from . import hopf
    from .groups import FiniteGroup, parse_group

    if name.startswith("dual:"):
        return hopf.dual_hopf(builtin_algebra(name[5:], field))
    if name == "sweedler":
        return hopf.sweedler(field or QQ)
    if name.startswith("taft:") or name.startswith("uqsl2:"):
        kind, _, arg = name.partition(":")
        try:
            n = int(arg)
        except ValueError:
            raise ParseError(f"bad order in {name!r}") from None
        if field is None:
            field = QQ if (kind == "taft" and n == 2) else Cyclotomic(n)
        return hopf.taft(n, field) if kind == "taft" else hopf.small_quantum_sl2(n, field)
    if name.startswith("group:"):
        G = parse_group(name[6:])
        if not isinstance(G, FiniteGroup):
            raise ParseError(f"{name[6:]!r} is not a finite group")
        return hopf.group_algebra(G, field or QQ)
    raise ParseError(f"unknown builtin {name!r}")


def _field_arg(text: str | None) -> Field | None:
    return parse_field(text) if text else None


# -- verify ----------------------------------------------------------------------------


def invariant_checks(h, rng: random.Random, pairs: int) -> dict[str, tuple[bool, object]]:
    """Run the identity suite on seeded random elements; first witness on failure."""
    from .hopf import (
        adjoint_coproduct_sides,
        equivariance_sides,
        module_algebra_sides,
        multiplication_recovery_sides,
        random_element,
    )

    out = {}
    suites = [
        ("adjoint-coproduct", lambda: adjoint_coproduct_sides(h, random_element(h, rng), random_element(h, rng))),
        ("module-algebra", lambda: module_algebra_sides(h, random_element(h, rng), random_element(h, rng), random_element(h, rng))),
        ("multiplication-recovery", lambda: multiplication_recovery_sides(h, random_element(h, rng), random_element(h, rng))),
    ]
    if h.is_cocommutative():
        suites.append(("cocommutative-equivariance", lambda: equivariance_sides(h, random_element(h, rng), random_element(h, rng))))
    for name, make in suites:
        witness = None
        for t in range(pairs):
            lhs, rhs = make()
            if lhs != rhs:
                witness = {"trial": t}
                break
        out[name] = (witness is None, witness)
    return out


def cmd_verify(args, report: Report):
    from .hopf import load_hsc, verify_axioms

    field = _field_arg(args.field)
    if args.builtin:
        h = builtin_algebra(args.builtin, field)
    elif args.file:
        h = load_hsc(args.file)
    else:
        raise UsageError("verify needs --builtin NAME or a structure-constant file")
    rep = verify_axioms(h)
    for c in rep:
        report.add(
            f"axiom.{c.name}",
            "pass" if c.passed else "fail",
            {"algebra": h.name, "dim": h.dim, "witness": c.witness, "detail": c.detail or None},
        )
    if rep.ok:
        rng = random.Random(args.seed)
        for name, (ok, witness) in invariant_checks(h, rng, args.pairs).items():
            report.add(f"identity.{name}", "pass" if ok else "fail", {"trials": args.pairs, "witness": witness})


# -- adfin ------------------------------------------------------------------------------


def _verdict_data(v) -> dict:
    from .finmod import Finite

    if isinstance(v, Finite):
        return {"verdict": "finite", "dim": v.dim}
    return {"verdict": "budget-exceeded", "reached": v.reached, "budget": v.budget}


def cmd_adfin(args, report: Report):
    from .finmod import BudgetExceeded, Finite, default_budget, orbit_closure
    from .pbw import ad_power_chain, adfin_probe, uq_sl2, uq_sl2_quotient

    budget = args.budget or default_budget()
    field = _field_arg(args.field)
    algebra = args.algebra
    if algebra is None and args.builtin:
        from .finmod import ModuleData

        h = builtin_algebra(args.builtin, field)
        mod = ModuleData.adjoint(h).as_computable()
        verdicts = [orbit_closure(mod, [{i: h.field.one}], budget=budget) for i in range(h.dim)]
        ok = all(isinstance(v, Finite) for v in verdicts)
        report.add(
            "adfin.finite-dimensional",
            "pass" if ok else "budget-exceeded",
            {"algebra": h.name, "verdicts": {h.labels[i]: _verdict_data(v) for i, v in enumerate(verdicts)}},
        )
        return
    if algebra is None:
        raise UsageError("adfin needs --algebra uq-sl2 | uq-sl2-quotient:n, or --builtin NAME")
    if algebra == "uq-sl2":
        U = uq_sl2(field) if field is not None else uq_sl2()
        chain = ad_power_chain(U, U.E, U.K, args.steps)
        increasing = all(a < b for a, b in zip(chain, chain[1:]))
        report.add(
            "evidence.ad-E-chain",
            "evidence" if increasing else "fail",
            {"dims": chain, "note": "growth is evidence, not a proof that K lies outside the locally finite part"},
        )
        v = adfin_probe(U, U.K, budget=min(budget, args.evidence_budget))
        report.add(
            "evidence.orbit-of-K",
            "evidence" if isinstance(v, BudgetExceeded) else "pass",
            {**_verdict_data(v), "history": list(v.history)},
        )
        return
    if not algebra.startswith("uq-sl2-quotient:"):
        raise UsageError(f"unknown algebra {algebra!r}")
    try:
        n = int(algebra.split(":", 1)[1])
    except ValueError:
        raise UsageError(f"bad n in {algebra!r}") from None
    H = uq_sl2_quotient(n, field)
    window = H.window(args.window)
    cache: dict = {}

    def probe(terms: dict):
        key = tuple(sorted(terms.items(), key=lambda kv: kv[0]))
        hit = cache.get(key)
        if hit is None:
            hit = adfin_probe(H, terms, budget=budget)
            cache[key] = hit
        return hit

    per = {}
    all_finite = True
    for key in window:
        v = probe({key: H.field.one})
        per[H.format_key(key)] = _verdict_data(v)
        all_finite &= isinstance(v, Finite)
    report.add(
        "adfin.window",
        "pass" if all_finite else "budget-exceeded",
        {"window_size": len(window), "bmax": args.window, "verdicts": per},
    )
    coideal_ok = True
    for key in window:
        legs: dict = {}
        for (k1, k2), x in H.monomial_coproduct(key).items():
            legs.setdefault(k1, {})[k2] = x
        for leg in legs.values():
            coideal_ok &= isinstance(probe(leg), Finite)
    report.add(
        "adfin.left-coideal",
        "pass" if coideal_ok else "budget-exceeded",
        {"window_size": len(window)},
    )
    anti_ok = all(isinstance(probe(H.monomial_antipode(key)), Finite) for key in window)
    report.add(
        "adfin.antipode-stable",
        "pass" if anti_ok else "budget-exceeded",
        {"window_size": len(window)},
    )
    cocomm = H.is_cocommutative(window)
    report.add(
        "adfin.not-cocommutative",
        "pass" if not cocomm else "fail",
        {"cocommutative_on_window": cocomm},
    )


# -- fc -----------------------------------------------------------------------------------


def cmd_fc(args, report: Report):
    from .finmod import Finite, default_budget, extend_scalars, orbit_closure
    from .groups import fc_center_window, group_ad_module, parse_group

    G = parse_group(args.group)
    budget = args.budget or default_budget()
    field = _field_arg(args.field) or QQ
    mod = group_ad_module(G, QQ)
    if field != QQ:
        mod = extend_scalars(mod, field)
    members = fc_center_window(G, args.length)
    report.add(
        "fc.members",
        "pass",
        {"group": G.name, "length": args.length, "members": [G.format(g) for g in members]},
    )
    mismatches = []
    verdicts = {}
    for g in G.ball(args.length):
        v = orbit_closure(mod, [{g: field.one}], budget=budget)
        o = G.conjugacy(g)
        agree = (isinstance(v, Finite) and o.finite and v.dim == o.size) or (not isinstance(v, Finite) and not o.finite)
        verdicts[G.format(g)] = {**_verdict_data(v), "oracle": o.size if o.finite else "infinite"}
        if not agree:
            mismatches.append(G.format(g))
    report.add(
        "fc.ad-module-agreement",
        "pass" if not mismatches else "fail",
        {"mismatches": mismatches, "verdicts": verdicts},
    )


# -- dietzmann -------------------------------------------------------------------------------


def _parse_element(host, item, field):
    from .dietzmann import GroupAlgebraHost

    if isinstance(item, dict):
        out: dict = {}
        for k, c in item.items():
            for kk, x in _parse_element(host, k, field).items():
                out[kk] = out.get(kk, field.zero) + x * field(str(c))
        return {k: x for k, x in out.items() if x}
    if isinstance(item, list):
        return {i: field(str(x)) for i, x in enumerate(item) if field(str(x))}
    if not isinstance(item, str):
        raise ParseError(f"cannot read element {item!r}")
    if isinstance(host, GroupAlgebraHost):
        G = host.G
        from .groups import FiniteGroup, parse_permutation

        if isinstance(G, FiniteGroup):
            for g in G.elements:
                if G.format(g) == item:
                    return {g: field.one}
            if G.elements and isinstance(G.elements[0], tuple) and item.startswith("("):
                try:
                    p = parse_permutation(item, len(G.elements[0]))
                except ParseError:
                    p = None
                if p is not None:
                    p = p + tuple(range(len(p), len(G.elements[0])))
                    if p in G._index:
                        return {p: field.one}
        names = getattr(host, "_names_by_format", None)
        if names is None:
            names = {G.format(g): g for g in G.ball(12)}
            host._names_by_format = names
        if item in names:
            return {names[item]: field.one}
        raise ParseError(f"no element {item!r} in {G.name}")
    labels = getattr(getattr(host, "h", None), "labels", None)
    if labels and item in labels:
        return {labels.index(item): field.one}
    raise ParseError(f"cannot read element {item!r}")


def load_family(path: str):
    from .dietzmann import CoidealFamily, GroupAlgebraHost, HopfHost
    from .groups import parse_group

    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno) from None
    field = parse_field(doc.get("field", "Q"))
    host_desc = doc.get("host")
    if not isinstance(host_desc, str):
        raise ParseError("family file needs a string 'host'")
    if host_desc.startswith("group:"):
        host = GroupAlgebraHost(parse_group(host_desc[6:]), field)
    else:
        host = HopfHost(builtin_algebra(host_desc, field))
    comps = doc.get("components")
    if not isinstance(comps, list) or not comps:
        raise ParseError("family file needs a non-empty 'components' list")
    spans = [[_parse_element(host, e, field) for e in comp] for comp in comps]
    stab = doc.get("ad_stability", "verify")
    fam = CoidealFamily(host, spans, ad_stability="unknown" if stab == "verify" else stab, verify=(stab == "verify"))
    monos = []
    for mono in doc.get("straighten", []):
        monos.append([(int(i), _parse_element(host, e, field)) for i, e in mono])
    return fam, doc, monos


def cmd_dietzmann(args, report: Report):
    from .dietzmann import product_filtration, straighten

    fam, doc, monos = load_family(args.family)
    rep = product_filtration(fam, max_steps=args.max_steps, budget=args.budget)
    ok = rep.s_star is not None and rep.s_star <= fam.k
    report.add(
        "dietzmann.filtration",
        "pass" if ok else ("budget-exceeded" if rep.budget_hit or rep.s_star is None else "fail"),
        {**rep.as_dict(), "k": fam.k, "ad_stability": fam.ad_stability, "name": doc.get("name")},
    )
    for idx, mono in enumerate(monos):
        res = straighten(fam, mono)
        report.add(
            f"dietzmann.straighten.{idx}",
            "pass" if res.max_length < res.input_length else "fail",
            {"input_length": res.input_length, "terms": len(res.terms), "max_length": res.max_length, "steps": res.steps},
        )


# -- tensorfin -----------------------------------------------------------------------------


def tensor_fin_check(
    V_kinds, W_kinds, field: Field, window: int, budget: int, samples: int, seed: int, extend_to: Field | None = None
) -> dict:
    """Compare per-vector fin(V⊗W) membership with fin V ⊗ fin W over kZ.

    The window holds t^m for |m| ≤ window in every regular summand plus the
    one-dimensional summands. Membership on the right is decided through U′
    and U″ of the single vector: x ∈ fin V ⊗ fin W iff both legs lie in the
    locally finite parts. With ``extend_to`` both factors are built over
    ``field`` and then extended, and the whole check runs over the extension.
    """
    from .finmod import (
        Finite,
        extend_scalars,
        laurent_module,
        orbit_closure,
        tensor_computable,
        u_double_prime_keyed,
        u_prime_keyed,
    )

    V = laurent_module(field, V_kinds)
    W = laurent_module(field, W_kinds)
    if extend_to is not None:
        V, W, field = extend_scalars(V, extend_to), extend_scalars(W, extend_to), extend_to
    VW = tensor_computable(V, W)

    def keys(kinds):
        out = []
        for s, k in enumerate(kinds):
            out += [(s, m) for m in range(-window, window + 1)] if k == "regular" else [(s, 0)]
        return out

    kv, kw = keys(V_kinds), keys(W_kinds)
    fin_cache: dict = {}

    def is_fin(mod, vec, tag):
        key = (tag, tuple(sorted(vec.items())))
        if key not in fin_cache:
            fin_cache[key] = isinstance(orbit_closure(mod, [vec], budget=budget), Finite)
        return fin_cache[key]

    def rhs(x):
        up = u_prime_keyed(field, [x])
        upp = u_double_prime_keyed(field, [x])
        return all(is_fin(V, u, "V") for u in up.vectors) and all(is_fin(W, w, "W") for w in upp.vectors)

    disagreements = []
    finite_at = []
    vectors = [{(a, b): field.one} for a in kv for b in kw]
    rng = random.Random(seed)
    for _ in range(samples):
        x: dict = {}
        for _ in range(rng.randint(1, 4)):
            c = field(rng.choice([-3, -2, -1, 1, 2, 3]))
            k = (rng.choice(kv), rng.choice(kw))
            x[k] = x.get(k, field.zero) + c
        x = {k: c for k, c in x.items() if c}
        if x:
            vectors.append(x)
    for idx, x in enumerate(vectors):
        left = is_fin(VW, x, "VW")
        right = rhs(x)
        if left:
            finite_at.append(idx)
        if left != right:
            disagreements.append({f"{k}": str(c) for k, c in x.items()})
    return {
        "window_keys_per_factor": [len(kv), len(kw)],
        "vectors": len(vectors),
        "finite_indices": finite_at,
        "disagreements": disagreements,
    }


def cmd_tensorfin(args, report: Report):
    from .finmod import default_budget

    field = _field_arg(args.field) or QQ
    budget = args.budget or default_budget()
    V = args.V.split("+")
    W = args.W.split("+")
    data = tensor_fin_check(V, W, field, args.window, budget, args.samples, args.seed)
    report.add(
        "tensorfin.agreement",
        "pass" if not data["disagreements"] else "fail",
        {"V": args.V, "W": args.W, "field": str(field), **data},
    )


# -- entry point ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", help="Q, fp:p, cyclotomic:n, ratfunc, ratfunc:<base>")
    common.add_argument("--budget", type=int, help="orbit budget (default HOPFAD_BUDGET or 200)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="print the JSON report")

    p = _Parser(prog="hopfad", description="Exact checks on Hopf algebras and their adjoint representations.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="Hopf axioms and adjoint-action identities")
    v.add_argument("file", nargs="?")
    v.add_argument("--builtin")
    v.add_argument("--pairs", type=int, default=20)

    a = sub.add_parser("adfin", parents=[common], help="locally finite part of the adjoint action")
    a.add_argument("--algebra")
    a.add_argument("--builtin")
    a.add_argument("--window", type=int, default=6)
    a.add_argument("--steps", type=int, default=5)
    a.add_argument("--evidence-budget", type=int, default=30)

    f = sub.add_parser("fc", parents=[common], help="FC-center against adjoint orbits")
    f.add_argument("group")
    f.add_argument("--length", type=int, default=3)

    d = sub.add_parser("dietzmann", parents=[common], help="product filtration of a coideal family")
    d.add_argument("family")
    d.add_argument("--max-steps", type=int, default=16)

    t = sub.add_parser("tensorfin", parents=[common], help="fin(V⊗W) against fin V ⊗ fin W over kZ")
    t.add_argument("V", help="summands joined by '+', e.g. regular+trivial")
    t.add_argument("W", help="e.g. regular+sign")
    t.add_argument("--window", type=int, default=20)
    t.add_argument("--samples", type=int, default=100)
    return p


COMMANDS = {
    "verify": cmd_verify,
    "adfin": cmd_adfin,
    "fc": cmd_fc,
    "dietzmann": cmd_dietzmann,
    "tensorfin": cmd_tensorfin,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.budget is not None and args.budget < 1:
            raise UsageError("--budget must be at least 1")
        report = Report(["hopfad", *argv])
        COMMANDS[args.command](args, report)
    except UsageError as e:
        print(f"hopfad: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, OSError) as e:
        print(f"hopfad: input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HopfadError as e:
        print(f"hopfad: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json() if args.json else report.to_table())
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
