"""Command-line front end.

Exit codes: 0 on success, 1 when an object fails validation, 2 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import catalog, serialize
from .errors import FuseliftError, ParseError
from .extension import ExtensionProblem, build_U_ring, check_problem, fuse_U
from .fusion import FusionRing, ring_validate
from .inverse import InverseProblem, derive
from .quadspace import QuadraticSpace, is_nondegenerate

CATALOG_ENV = "FUSELIFT_CATALOG_DIR"
CATALOG_NAMES = ("sl2@k", "lattice@k,m", "parafermion@k", "ext@k", "inv@k")

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class Invalid(FuseliftError):
    """A loaded object failed a check; message already formatted for the user."""


def bundled_dir() -> Path:
    return Path(str(resources.files("fuselift") / "data"))


def bundled_files() -> list[str]:
    return sorted(p.name for p in bundled_dir().glob("*.json"))


def resolve(ref: str) -> Path | str:
    """A readable file path, or the catalog name itself when ``ref`` names a generator."""
    candidates = [Path(ref)]
    if os.environ.get(CATALOG_ENV):
        candidates.append(Path(os.environ[CATALOG_ENV]) / ref)
    candidates.append(bundled_dir() / ref)
    for c in candidates:
        if c.is_file():
            return c
    if "@" in ref:
        return ref
    raise FileNotFoundError(f"{ref}: no such file (also looked in ${CATALOG_ENV} and the bundled data)")


@dataclass
class Workspace:
    """Loaded objects by name, plus the output format."""

    fmt: str = "table"
    objects: dict[str, Any] = field(default_factory=dict)

    def load(self, ref: str, name: str | None = None) -> Any:
        name = name or ref
        if name in self.objects:
            raise FuseliftError(f"workspace already holds {name!r}")
        src = resolve(ref)
        if isinstance(src, str):
            obj = catalog.by_name(src)
        else:
            _, obj = serialize.load_any(serialize.load_json(src), str(src))
        self.objects[name] = obj
        return obj

    def load_as(self, ref: str, kind: type, what: str) -> Any:
        obj = self.load(ref)
        if not isinstance(obj, kind):
            raise ParseError(f"expected {what}, found {type(obj).__name__}", ref)
        return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _require_valid(R: FusionRing) -> None:
    report = ring_validate(R)
    if not report.ok:
        raise Invalid(f"ring fails validation: {report.violations[0]}")


def cmd_check(ws: Workspace, args) -> str:
    obj = ws.load(args.path)
    if isinstance(obj, FusionRing):
        _require_valid(obj)
        return f"ring: {len(obj)} labels, all identities hold\n"
    if isinstance(obj, QuadraticSpace):
        state = "nondegenerate" if is_nondegenerate(obj) else "degenerate"
        return f"quadratic space on {obj.group.name}: {state}\n"
    if isinstance(obj, ExtensionProblem):
        _require_valid(obj.W)
        failures = check_problem(obj)
        if failures:
            raise Invalid(failures[0])
        return (
            f"extension: |Irr W| = {len(obj.W)}, C = {obj.C.name}, |D| = {obj.D.order}\n"
            f"D^perp = {obj.Dperp}\n"
            f"untwisted sectors: {len(obj.table.untwisted)}\n"
        )
    der = derive(obj)
    return f"inverse: derived ring with {len(der.ring)} labels, all identities hold\n"


def cmd_extend(ws: Workspace, args) -> str:
    P = ws.load_as(args.path, ExtensionProblem, "an extension problem")
    if ws.fmt == "json":
        return serialize.dumps(serialize.sector_table_to_dict(P.table, args.twisted))
    return serialize.sector_table_text(P.table, args.twisted)


def cmd_fuse(ws: Workspace, args) -> str:
    P = ws.load_as(args.path, ExtensionProblem, "an extension problem")
    s1, s2 = P.table.by_name(args.sector1), P.table.by_name(args.sector2)
    product = fuse_U(P, s1, s2)
    if ws.fmt == "json":
        return serialize.dumps([{"sector": s.name, "n": n} for s, n in product])
    return " ".join(f"{s.name}:{n}" for s, n in product) + "\n"


def cmd_build_ring(ws: Workspace, args) -> str:
    P = ws.load_as(args.path, ExtensionProblem, "an extension problem")
    R = build_U_ring(P)
    _require_valid(R)
    return serialize.dumps(serialize.ring_to_dict(R))


def cmd_derive(ws: Workspace, args) -> str:
    IP = ws.load_as(args.path, InverseProblem, "an inverse problem")
    return serialize.dumps(serialize.ring_to_dict(derive(IP).ring))


def cmd_deform(ws: Workspace, args) -> str:
    P = ws.load_as(args.path, ExtensionProblem, "an extension problem")
    return serialize.dumps(serialize.problem_to_dict(catalog.deform(P, args.s)))


def cmd_catalog(ws: Workspace, args) -> str:
    if args.name is None:
        lines = ["generators:"] + [f"  {n}" for n in CATALOG_NAMES]
        lines += ["bundled files:"] + [f"  {n}" for n in bundled_files()]
        return "\n".join(lines) + "\n"
    return serialize.dumps(serialize.to_dict(ws.load(args.name)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuselift", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str, out: bool = False, fmt: bool = False) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn, out=None, format="table")
        if out:
            sp.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("table", "json"), default="table")
        return sp

    add("check", cmd_check, "validate a ring, space, extension or inverse problem").add_argument("path")
    sp = add("extend", cmd_extend, "print the sector table of an extension problem", out=True, fmt=True)
    sp.add_argument("path")
    sp.add_argument("--twisted", action="store_true", help="include every character of D")
    sp = add("fuse", cmd_fuse, "fuse two untwisted sectors", fmt=True)
    sp.add_argument("path")
    sp.add_argument("sector1")
    sp.add_argument("sector2")
    add("build-ring", cmd_build_ring, "write the fusion ring of the extension", out=True).add_argument("path")
    add("derive", cmd_derive, "write the fusion ring of the commutant", out=True).add_argument("path")
    sp = add("deform", cmd_deform, "shift the lattice datum (k, m) to (k, m + sk)", out=True)
    sp.add_argument("path")
    sp.add_argument("s", type=int)
    add("catalog", cmd_catalog, "list or emit catalog entries", out=True).add_argument("name", nargs="?")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    ws = Workspace(fmt=args.format)
    try:
        text = args.fn(ws, args)
        _emit(text, args.out)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (FuseliftError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
