"""Command line entry point.

Exit codes: 0 when every requested verdict holds, 1 when one fails or a
computation is refused, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .cocyclic import (
    CocyclicModule,
    LevelCapError,
    NotConilpotentError,
    antisym_chain_map,
    bB_relations,
    cocyclic_relations,
    filtration_report,
)
from .complexes import (
    RefusedError,
    build_chain_diffs,
    build_cochain_diffs,
    cohomology_dims,
    hc_complex,
    hp_complex,
    mixed_check,
)
from .duality import duality_square_check
from .lie import builtin_lie
from .linalg import format_fraction
from .registry import example
from .sayd import ShapeError, all_verdicts, check_module, solve_ayd_linear
from .weil import build_truncated_weil
from .workspace import WorkspaceError, parse_workspace, serialize_workspace, workspace_from_module


class InputError(Exception):
    pass


class Run:
    """Collects verdicts and tables for printing and for the JSON report."""

    def __init__(self, command: str, seed=None):
        self.command = command
        self.seed = seed
        self.verdicts: list[dict] = []
        self.tables: dict = {}
        self.refused: str | None = None

    def verdict(self, name: str, ok: bool, required: bool = True):
        self.verdicts.append({"name": name, "ok": bool(ok), "required": required})
        print(f"{name:<34} {'pass' if ok else 'FAIL'}")

    def table(self, name: str, values):
        self.tables[name] = values
        print(f"{name}: {values}")

    @property
    def ok(self) -> bool:
        return self.refused is None and all(v["ok"] for v in self.verdicts if v["required"])

    def report(self) -> dict:
        return {
            "tool": "liecyclic",
            "version": __version__,
            "command": self.command,
            "seed": self.seed,
            "ok": self.ok,
            "refused": self.refused,
            "verdicts": self.verdicts,
            "tables": self.tables,
        }


def load(args):
    if getattr(args, "example", None):
        try:
            return example(args.example), {}
        except (KeyError, ValueError) as exc:
            raise InputError(f"name error: {exc.args[0] if exc.args else exc}") from None
    if not getattr(args, "workspace", None):
        raise InputError("give a workspace file or --example NAME")
    try:
        spec = parse_workspace(args.workspace)
        return spec.module(), spec.options
    except OSError as exc:
        raise InputError(f"cannot read {args.workspace}: {exc.strerror}") from None
    except WorkspaceError as exc:
        raise InputError(f"{args.workspace}:{exc}") from None
    except ShapeError as exc:
        raise InputError(f"dimension error: {exc}") from None


def _seed(args, options) -> int:
    if args.seed is not None:
        return args.seed
    return int(options.get("seed", 0))


def cmd_check(args, run: Run):
    sayd, _ = load(args)
    v = all_verdicts(sayd)
    run.verdict("module", v.module)
    run.verdict("comodule", v.comodule)
    run.verdict("anti-Yetter-Drinfeld", v.ayd)
    if args.unimodular:
        run.verdict("stability", v.stability, required=False)
        run.verdict("unimodular stability", v.unimodular_stability)
    else:
        run.verdict("stability", v.stability)
        run.verdict("unimodular stability", v.unimodular_stability, required=False)
    run.verdict("locally conilpotent", v.conilpotent, required=False)
    mc = mixed_check(sayd)
    run.verdict("chain (CE+K)^2 = 0", mc.chain_total_zero, required=False)
    run.verdict("cochain (CE+K)^2 = 0", mc.cochain_total_zero, required=False)
    run.verdict("verdicts consistent with squares", mc.consistent)


def _print_matrices(label, mats):
    for j, M in enumerate(mats, 1):
        for (r, c), val in M.items():
            print(f"  {label} {j} {r + 1} {c + 1} {format_fraction(val)}")


def cmd_solve(args, run: Run):
    sayd, _ = load(args)
    mod = check_module(sayd.action)
    run.verdict("module", mod.ok)
    if not mod.ok:
        return
    sol = solve_ayd_linear(sayd.action, stability=not args.unimodular, unimodular=args.unimodular,
                           seed=args.seed or 0)
    run.table("solution dimension", sol.dimension)
    for k, mats in enumerate(sol.basis, 1):
        print(f"basis element c{k}:")
        _print_matrices("A", mats)
    run.tables["basis"] = [
        [[[r + 1, c + 1, format_fraction(v)] for (r, c), v in M.items()] for M in mats] for mats in sol.basis
    ]
    run.table("commutator monomials", [[a + 1, b + 1] for a, b in sol.quadratic_monomials()])
    run.verdict("commutative on whole span", sol.commutative_on_span, required=False)


def cmd_cohomology(args, run: Run):
    sayd, options = load(args)
    kinds = [k for k in ("ce", "hc", "hp") if getattr(args, k)] or ["ce"]
    cochain = args.cochain
    for kind in kinds:
        try:
            if kind == "ce":
                ce, k = build_cochain_diffs(sayd) if cochain else build_chain_diffs(sayd)
                name = "CE cohomology" if cochain else "CE homology"
                run.table(name, cohomology_dims(ce))
                run.table("Koszul " + ("cohomology" if cochain else "homology"), cohomology_dims(k))
            elif kind == "hc":
                if cochain:
                    raise RefusedError("HC is computed on the chain side only")
                top = args.max_degree if args.max_degree is not None else int(
                    options.get("max-degree", 2 * sayd.lie.dim + 3))
                dims = cohomology_dims(hc_complex(sayd, top + 1))[: top + 1]
                run.table("HC", dims)
            else:
                if cochain:
                    raise RefusedError("HP is computed on the chain side only")
                d = cohomology_dims(hp_complex(sayd))
                run.table("HP", {"even": d[0], "odd": d[1]})
        except RefusedError as exc:
            run.refused = str(exc)
            print(f"refused: {exc}")
            return


def cmd_hp(args, run: Run):
    args.ce = args.hc = False
    args.hp = True
    args.cochain = False
    args.max_degree = None
    cmd_cohomology(args, run)


def cmd_duality(args, run: Run):
    sayd, _ = load(args)
    rep = duality_square_check(sayd, twist_sign=args.twist)
    run.verdict("Koszul square commutes", rep.koszul_ok)
    run.verdict("CE square commutes up to sign", rep.ce_ok)
    run.table("CE signs", {str(p): s for p, s in sorted(rep.ce_signs.items())})
    run.verdict("CE sign is (-1)^(N-p-1)", rep.ce_sign_rule(sayd.lie.dim), required=False)
    run.table("CE homology", rep.ce_betti_chain)
    run.table("twisted CE cohomology", rep.ce_betti_cochain)
    run.verdict("Betti numbers match under p <-> N-p", rep.betti_match)
    for kind, p, wit in rep.failures:
        print(f"  {kind} square fails at p={p}: column {wit['column'] + 1}")


def cmd_weil(args, run: Run):
    try:
        lie = builtin_lie(args.lie)
    except KeyError as exc:
        raise InputError(f"name error: {exc.args[0]}") from None
    if args.cap < 0:
        raise InputError("cap must be non-negative")
    sayd = build_truncated_weil(lie, args.cap // 2)
    text = serialize_workspace(workspace_from_module(sayd, lie_builtin=args.lie))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    run.tables["dimension"] = sayd.dim
    v = all_verdicts(sayd)
    run.verdicts += [
        {"name": k, "ok": getattr(v, k), "required": False}
        for k in ("module", "comodule", "ayd", "stability", "unimodular_stability")
    ]


def cmd_ug_verify(args, run: Run):
    sayd, options = load(args)
    seed = _seed(args, options)
    run.seed = seed
    rng = random.Random(seed)
    wanted = [k for k in ("simplicial", "cyclic", "bB", "filtration", "antisym") if getattr(args, k)]
    if not wanted:
        wanted = ["simplicial", "cyclic", "bB", "filtration", "antisym"]
    try:
        cm = CocyclicModule(sayd, max_level=args.levels + 1)
    except NotConilpotentError as exc:
        run.refused = str(exc)
        print(f"refused: {exc}")
        return
    v = all_verdicts(sayd)
    if not v.sayd:
        run.refused = "coefficients are not SAYD"
        print("refused: coefficients are not SAYD")
        return
    simplicial = ("face-face", "degeneracy-degeneracy", "degeneracy-face")
    agg: dict[str, bool] = {}
    bb: dict[str, bool] = {}
    try:
        if "simplicial" in wanted or "cyclic" in wanted:
            for q in range(1, args.levels + 1):
                for _ in range(args.samples):
                    for key, ok in cocyclic_relations(cm, cm.random_tensor(q, rng)).items():
                        agg[key] = agg.get(key, True) and ok
        if "bB" in wanted:
            for q in range(1, args.levels + 1):
                for _ in range(args.samples):
                    for key, ok in bB_relations(cm, cm.random_tensor(q, rng)).items():
                        bb[key] = bb.get(key, True) and ok
    except LevelCapError as exc:
        run.refused = str(exc)
        print(f"refused: {exc}")
        return
    if "simplicial" in wanted:
        for key in simplicial:
            run.verdict(key, agg.get(key, True))
    if "cyclic" in wanted:
        for key in sorted(k for k in agg if k not in simplicial):
            run.verdict(key, agg[key])
    for key, ok in bb.items():
        run.verdict(key, ok)
    if "filtration" in wanted:
        fr = filtration_report(cm, rng, samples=max(1, args.samples // 4), max_level=min(args.levels, 2))
        run.table("filtration dimensions", fr.dims)
        run.verdict("del_K lowers the filtration", fr.del_k_drops)
        run.verdict("del_CE preserves the filtration", fr.del_ce_preserves)
        for name, ok in fr.preserves.items():
            run.verdict(f"{name} preserves the filtration", ok)
    if "antisym" in wanted:
        ar = antisym_chain_map(cm)
        # the identities are only claimed for the zero coaction
        trivial = not any(sayd.A)
        if not trivial:
            print("note: coaction is nonzero, antisymmetrization verdicts are informational")
        run.verdict("b alpha = alpha del_K", all(ar.b_matches_koszul.values()), required=trivial)
        run.verdict("B alpha = alpha del_CE", all(ar.B_matches_ce.values()), required=trivial)
        run.verdict("unnormalized alpha picks up factor p", all(ar.unnormalized_factor.values()), required=False)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liecyclic", description="Lie algebra (co)homology with SAYD coefficients")
    p.add_argument("--version", action="version", version=f"liecyclic {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("workspace", nargs="?", help="workspace file")
        sp.add_argument("--example", help="built-in example such as sl2/weil2 or aff1/trivial")
        sp.add_argument("--report", help="write a JSON report to this path")
        sp.add_argument("--seed", type=int, default=None)
        return sp

    sp = with_input(sub.add_parser("check", help="module, comodule, AYD and stability verdicts"))
    sp.add_argument("--unimodular", action="store_true", help="require unimodular stability instead")
    sp.set_defaults(func=cmd_check)

    sp = with_input(sub.add_parser("solve-sayd", help="all coactions making the given action SAYD"))
    sp.add_argument("--unimodular", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = with_input(sub.add_parser("cohomology", help="CE, cyclic or periodic (co)homology dimensions"))
    sp.add_argument("--ce", action="store_true")
    sp.add_argument("--hc", action="store_true")
    sp.add_argument("--hp", action="store_true")
    side = sp.add_mutually_exclusive_group()
    side.add_argument("--chain", action="store_true")
    side.add_argument("--cochain", action="store_true")
    sp.add_argument("--max-degree", type=int, default=None)
    sp.set_defaults(func=cmd_cohomology)

    sp = with_input(sub.add_parser("hp", help="periodic cyclic homology"))
    sp.set_defaults(func=cmd_hp)

    sp = with_input(sub.add_parser("duality", help="Poincaré duality squares"))
    sp.add_argument("--twist", type=int, choices=(1, -1), default=-1)
    sp.set_defaults(func=cmd_duality)

    sp = sub.add_parser("weil", help="emit truncated Weil coefficients as a workspace")
    sp.add_argument("--lie", default="sl2")
    sp.add_argument("--cap", type=int, required=True, help="weight cap (each generator has weight 2)")
    sp.add_argument("-o", "--output")
    sp.add_argument("--report")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_weil)

    sp = with_input(sub.add_parser("ug-verify", help="check the cocyclic module on random tensors"))
    for flag in ("simplicial", "cyclic", "bB", "filtration", "antisym"):
        sp.add_argument(f"--{flag}", action="store_true")
    sp.add_argument("--samples", type=int, default=8)
    sp.add_argument("--levels", type=int, default=2)
    sp.set_defaults(func=cmd_ug_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = Run(args.command, args.seed)
    try:
        args.func(args, run)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(run.report(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if run.ok else 1


if __name__ == "__main__":
    sys.exit(main())
