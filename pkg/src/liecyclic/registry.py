"""Named example data used by the tests and the command line."""

from __future__ import annotations

from .lie import LieAlgebra, abelian, aff1, builtin_lie, heisenberg, modular_character, sl2
from .sayd import (
    SaydModule,
    adjoint_module,
    coadjoint_module,
    delta_twist,
    sl2_simple2,
    trivial_module,
    with_zero_coaction,
)
from .weil import build_truncated_weil

ALGEBRAS = ("sl2", "heisenberg", "aff1", "abelian3")


def shipped_algebras() -> list[LieAlgebra]:
    return [sl2(), heisenberg(), aff1(), abelian(3)]


def module_from_words(lie: LieAlgebra, words: list[str]) -> SaydModule:
    """Resolve ``trivial [m]``, ``weil <cap>`` / ``weil --cap <cap>``, ``weil+delta <cap>``,
    ``simple2``, ``adjoint``, ``coadjoint``.  Raises KeyError for unknown names."""
    if not words:
        raise KeyError("empty module reference")
    name, args = words[0].lower(), [w for w in words[1:] if w != "--cap"]
    if name == "trivial":
        m = int(args[0]) if args else 1
        return with_zero_coaction(trivial_module(lie, m), f"trivial{m}")
    if name in ("weil", "weil+delta"):
        if len(args) != 1 or not args[0].isdigit():
            raise KeyError(f"{name} needs a weight cap, e.g. '{name} 2'")
        cap = int(args[0])
        mod = build_truncated_weil(lie, cap // 2)
        if name == "weil+delta":
            mod = SaydModule(delta_twist(mod.action, 1), mod.coaction, f"weil{cap}+delta")
        else:
            mod = SaydModule(mod.action, mod.coaction, f"weil{cap}")
        return mod
    if name == "simple2":
        if lie.name != "sl2":
            raise KeyError("simple2 is only defined over sl2")
        return with_zero_coaction(sl2_simple2(lie), "simple2")
    if name == "adjoint":
        return with_zero_coaction(adjoint_module(lie), "adjoint")
    if name == "coadjoint":
        return with_zero_coaction(coadjoint_module(lie), "coadjoint")
    raise KeyError(f"unknown module {words[0]!r}")


def example(ref: str) -> SaydModule:
    """``"sl2/weil2"``, ``"aff1/weil+delta2"``, ``"heisenberg/trivial"`` and so on."""
    if "/" not in ref:
        raise KeyError(f"example reference {ref!r} must look like 'algebra/module'")
    lie_name, mod = ref.split("/", 1)
    lie = builtin_lie(lie_name)
    mod = mod.strip()
    for prefix in ("weil+delta", "weil", "trivial"):
        if mod.startswith(prefix) and mod[len(prefix) :].isdigit():
            return module_from_words(lie, [prefix, mod[len(prefix) :]])
    return module_from_words(lie, mod.split())


def stable_weil(lie: LieAlgebra, cap: int) -> SaydModule:
    """Truncated Weil data, twisted by +δ when needed so that stability holds."""
    if any(modular_character(lie)):
        return module_from_words(lie, ["weil+delta", str(cap)])
    return module_from_words(lie, ["weil", str(cap)])


def shipped_sayd_examples(caps=(1, 2, 3, 4)) -> list[SaydModule]:
    """Every shipped (algebra, coefficients) pair that is SAYD."""
    out = []
    for lie in shipped_algebras():
        out.append(module_from_words(lie, ["trivial"]))
        for cap in caps:
            out.append(stable_weil(lie, cap))
    return out
