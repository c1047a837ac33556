"""The workspace text format.

Example::

    sayd-workspace 1
    [lie]
    builtin sl2
    [module]
    builtin weil 2
    [options]
    seed 0

An explicit algebra uses ``dim``/``basis`` lines in ``[lie]`` plus a
``[brackets]`` section of ``i j k value`` lines.  An explicit module uses
``dim m`` in ``[module]`` and ``j i k value`` lines in ``[action]`` and
``[coaction]`` (matrix index, row, column; all 1-based).  Either section may
open with its own ``dim m`` line.  Sections given explicitly replace the
corresponding part of a builtin module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lie import LieAlgebra, MalformedSpecError, builtin_lie, from_brackets, validate_lie_algebra
from .linalg import Matrix, format_fraction
from .registry import module_from_words
from .sayd import ActionMatrices, CoactionMatrices, SaydModule, zero_action, zero_coaction

HEADER = "sayd-workspace 1"
SECTIONS = ("lie", "brackets", "module", "action", "coaction", "options")
OPTION_KEYS = ("seed", "twist", "cap", "max-degree", "samples", "levels", "name")


class WorkspaceError(ValueError):
    """A diagnostic with a code (``syntax``, ``name`` or ``dimension``) and a position."""

    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        self.code = code
        self.line = line
        self.column = column
        self.message = message
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{code} error: {message}")


@dataclass
class Entries:
    dim: int | None = None
    dim_line: int = 0
    values: list[tuple[int, int, int, Fraction]] = field(default_factory=list)
    lines: list[int] = field(default_factory=list)

    def __eq__(self, other):
        return isinstance(other, Entries) and (self.dim, self.values) == (other.dim, other.values)


@dataclass
class WorkspaceSpec:
    lie_builtin: str | None = None
    lie_dim: int | None = None
    lie_basis: list[str] | None = None
    brackets: list[tuple[int, int, int, Fraction]] = field(default_factory=list)
    module_builtin: list[str] | None = None
    module_dim: int | None = None
    action: Entries | None = None
    coaction: Entries | None = None
    options: dict[str, str] = field(default_factory=dict)
    _positions: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, WorkspaceSpec):
            return NotImplemented
        keys = ("lie_builtin", "lie_dim", "lie_basis", "brackets", "module_builtin", "module_dim",
                "action", "coaction", "options")
        return all(getattr(self, k) == getattr(other, k) for k in keys)

    # materialization

    def lie(self) -> LieAlgebra:
        if self.lie_builtin:
            try:
                return builtin_lie(self.lie_builtin)
            except KeyError as exc:
                line, col = self._positions.get("lie_builtin", (0, 0))
                raise WorkspaceError("name", str(exc.args[0]), line, col) from None
        if self.lie_dim is None:
            raise WorkspaceError("syntax", "the [lie] section needs 'builtin <name>' or 'dim <n>'")
        try:
            lie = from_brackets(self.lie_dim, [(i - 1, j - 1, k - 1, v) for i, j, k, v in self.brackets],
                                self.lie_basis)
        except MalformedSpecError as exc:
            line, col = self._positions.get("brackets", (0, 0))
            raise WorkspaceError("dimension", str(exc), line, col) from None
        rep = validate_lie_algebra(lie)
        if not rep.ok:
            raise WorkspaceError("syntax", "structure constants are not a Lie algebra: " + rep.describe())
        return lie

    def module(self) -> SaydModule:
        lie = self.lie()
        base = None
        if self.module_builtin:
            try:
                base = module_from_words(lie, self.module_builtin)
            except (KeyError, ValueError) as exc:
                line, col = self._positions.get("module_builtin", (0, 0))
                msg = exc.args[0] if exc.args else str(exc)
                raise WorkspaceError("name", str(msg), line, col) from None
        m = self.module_dim if self.module_dim is not None else (base.dim if base else None)
        adim = self.action.dim if self.action and self.action.dim is not None else m
        cdim = self.coaction.dim if self.coaction and self.coaction.dim is not None else m
        if adim is None and cdim is None:
            raise WorkspaceError("syntax", "module dimension is not specified")
        adim = adim if adim is not None else cdim
        cdim = cdim if cdim is not None else adim
        if adim != cdim:
            line = self.coaction.dim_line if self.coaction and self.coaction.dim_line else 0
            raise WorkspaceError("dimension", f"action has dimension {adim} but coaction has dimension {cdim}",
                                 line, 1)
        if base is not None and base.dim != adim:
            raise WorkspaceError("dimension", f"builtin module has dimension {base.dim}, not {adim}")
        action = base.action if base is not None else zero_action(lie, adim)
        coaction = base.coaction if base is not None else zero_coaction(lie, adim)
        if self.action is not None:
            action = ActionMatrices(lie, _build(self.action, lie.dim, adim, "action"), adim)
        if self.coaction is not None:
            coaction = CoactionMatrices(lie, _build(self.coaction, lie.dim, adim, "coaction"), adim)
        name = self.options.get("name", base.name if base else "")
        return SaydModule(action, coaction, name)


def _build(entries: Entries, n: int, m: int, what: str) -> tuple[Matrix, ...]:
    ents: list[dict] = [{} for _ in range(n)]
    for (j, i, k, v), line in zip(entries.values, entries.lines):
        for col, (val, bound) in enumerate(((j, n), (i, m), (k, m))):
            if not 1 <= val <= bound:
                raise WorkspaceError("dimension", f"{what} index {val} out of range 1..{bound}", line, 2 * col + 1)
        ents[j - 1][i - 1, k - 1] = v
    return tuple(Matrix(m, m, e) for e in ents)


def _int(word: str, line: int, col: int) -> int:
    try:
        return int(word)
    except ValueError:
        raise WorkspaceError("syntax", f"expected an integer, got {word!r}", line, col) from None


def _frac(word: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(word)
    except (ValueError, ZeroDivisionError):
        raise WorkspaceError("syntax", f"expected a rational 'p/q', got {word!r}", line, col) from None


def _columns(raw: str) -> list[tuple[int, str]]:
    out, pos = [], 0
    for w in raw.split():
        pos = raw.index(w, pos)
        out.append((pos + 1, w))
        pos += len(w)
    return out


def parse_workspace_text(text: str) -> WorkspaceSpec:
    lines = text.splitlines()
    spec = WorkspaceSpec()
    seen_header = False
    section = None
    seen_sections = set()
    for lineno, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        cols = _columns(body)
        words = [w for _, w in cols]
        if not seen_header:
            if body.strip() != HEADER:
                raise WorkspaceError("syntax", f"first line must be '{HEADER}'", lineno, cols[0][0])
            seen_header = True
            continue
        if words[0].startswith("["):
            name = body.strip()
            if not (name.endswith("]") and name[1:-1] in SECTIONS):
                raise WorkspaceError("syntax", f"unknown section {name}", lineno, cols[0][0])
            section = name[1:-1]
            if section in seen_sections:
                raise WorkspaceError("syntax", f"duplicate section [{section}]", lineno, cols[0][0])
            seen_sections.add(section)
            if section == "action":
                spec.action = Entries()
            elif section == "coaction":
                spec.coaction = Entries()
            continue
        if section is None:
            raise WorkspaceError("syntax", "content before the first section", lineno, cols[0][0])
        if section == "lie":
            key = words[0]
            if key == "builtin" and len(words) == 2:
                spec.lie_builtin = words[1]
                spec._positions["lie_builtin"] = (lineno, cols[1][0])
            elif key == "dim" and len(words) == 2:
                spec.lie_dim = _int(words[1], lineno, cols[1][0])
            elif key == "basis" and len(words) >= 2:
                spec.lie_basis = words[1:]
            else:
                raise WorkspaceError("syntax", f"unexpected line in [lie]: {body.strip()!r}", lineno, cols[0][0])
        elif section == "brackets":
            if len(words) != 4:
                raise WorkspaceError("syntax", "bracket entry needs 'i j k value'", lineno, cols[0][0])
            i, j, k = (_int(w, lineno, c) for c, w in cols[:3])
            spec.brackets.append((i, j, k, _frac(words[3], lineno, cols[3][0])))
            spec._positions.setdefault("brackets", (lineno, cols[0][0]))
        elif section == "module":
            if words[0] == "builtin" and len(words) >= 2:
                spec.module_builtin = words[1:]
                spec._positions["module_builtin"] = (lineno, cols[1][0])
            elif words[0] == "dim" and len(words) == 2:
                spec.module_dim = _int(words[1], lineno, cols[1][0])
            else:
                raise WorkspaceError("syntax", f"unexpected line in [module]: {body.strip()!r}", lineno, cols[0][0])
        elif section in ("action", "coaction"):
            ent: Entries = getattr(spec, section)
            if words[0] == "dim" and len(words) == 2:
                if ent.values:
                    raise WorkspaceError("syntax", "'dim' must come before the entries", lineno, cols[0][0])
                ent.dim = _int(words[1], lineno, cols[1][0])
                ent.dim_line = lineno
                continue
            if len(words) != 4:
                raise WorkspaceError("syntax", f"{section} entry needs 'j i k value'", lineno, cols[0][0])
            j, i, k = (_int(w, lineno, c) for c, w in cols[:3])
            ent.values.append((j, i, k, _frac(words[3], lineno, cols[3][0])))
            ent.lines.append(lineno)
        elif section == "options":
            if len(words) != 2 or words[0] not in OPTION_KEYS:
                raise WorkspaceError("syntax", f"unknown option line {body.strip()!r}", lineno, cols[0][0])
            spec.options[words[0]] = words[1]
    if not seen_header:
        raise WorkspaceError("syntax", "empty workspace file", 1, 1)
    if "lie" not in seen_sections:
        raise WorkspaceError("syntax", "missing [lie] section")
    return spec


def parse_workspace(path) -> WorkspaceSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace_text(fh.read())


def serialize_workspace(spec: WorkspaceSpec) -> str:
    out = [HEADER, "[lie]"]
    if spec.lie_builtin:
        out.append(f"builtin {spec.lie_builtin}")
    if spec.lie_dim is not None:
        out.append(f"dim {spec.lie_dim}")
    if spec.lie_basis:
        out.append("basis " + " ".join(spec.lie_basis))
    if spec.brackets:
        out.append("[brackets]")
        out.extend(f"{i} {j} {k} {format_fraction(v)}" for i, j, k, v in spec.brackets)
    if spec.module_builtin or spec.module_dim is not None:
        out.append("[module]")
        if spec.module_builtin:
            out.append("builtin " + " ".join(spec.module_builtin))
        if spec.module_dim is not None:
            out.append(f"dim {spec.module_dim}")
    for name in ("action", "coaction"):
        ent = getattr(spec, name)
        if ent is None:
            continue
        out.append(f"[{name}]")
        if ent.dim is not None:
            out.append(f"dim {ent.dim}")
        out.extend(f"{j} {i} {k} {format_fraction(v)}" for j, i, k, v in ent.values)
    if spec.options:
        out.append("[options]")
        out.extend(f"{k} {v}" for k, v in spec.options.items())
    return "\n".join(out) + "\n"


def _entries_of(mats) -> Entries:
    ent = Entries()
    for j, M in enumerate(mats):
        for (i, k), v in M.items():
            ent.values.append((j + 1, i + 1, k + 1, v))
    ent.lines = [0] * len(ent.values)
    return ent


def workspace_from_module(sayd: SaydModule, lie_builtin: str | None = None) -> WorkspaceSpec:
    """Explicit workspace holding the full action and coaction matrices."""
    lie = sayd.lie
    spec = WorkspaceSpec()
    if lie_builtin:
        spec.lie_builtin = lie_builtin
    else:
        spec.lie_dim = lie.dim
        spec.lie_basis = list(lie.basis)
        spec.brackets = [(i + 1, j + 1, k + 1, v) for i, j, k, v in lie.upper_entries()]
    spec.module_dim = sayd.dim
    spec.action = _entries_of(sayd.B)
    spec.coaction = _entries_of(sayd.A)
    if sayd.name:
        spec.options["name"] = sayd.name
    return spec
