"""Map-file parsing and the built-in example registry.

A map file is plain text: a `vars:` line, then one block per section.

    # comment
    vars: x y
    kind: affine            # affine (default) | projective | monomial
    map:
        y
        y^2 - x
    inverse:
        x^2 - y
        x
    testpolys:
        x
        y

Monomial maps replace `map:` with a `matrix:` block of integer rows.
Expressions use the shared polynomial grammar.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynmaps import MonomialMap, PolyMap, ProjRationalMap
from .errors import ParseError
from .multipoly import parse_poly
from .picard_manin import PMOperator, cremona_operator, exceptional_permutation, pell_operator

KINDS = ("affine", "projective", "monomial")


@dataclass
class MapFile:
    label: str
    varnames: tuple
    kind: str = "affine"
    components: tuple = ()
    inverse: tuple = ()
    testpolys: tuple = ()
    matrix: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParseError(f"unknown map kind {self.kind!r}")
        if self.components and self.matrix:
            raise ParseError("a map carries either components or a matrix, not both")
        if self.kind == "monomial":
            if not self.matrix:
                raise ParseError("monomial maps need a matrix block")
            n = len(self.varnames)
            if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
                raise ParseError("matrix block must be square of the variable count")
        else:
            if not self.components:
                raise ParseError("map block missing")
            if len(self.components) != len(self.varnames):
                raise ParseError("component count must equal variable count")
        if self.inverse and len(self.inverse) != len(self.varnames):
            raise ParseError("inverse block must have one expression per variable")

    # -- builders -------------------------------------------------------
    def parsed_components(self, texts):
        return tuple(parse_poly(t, self.varnames) for t in texts)

    def to_map(self):
        if self.kind == "monomial":
            return MonomialMap(self.matrix, label=self.label)
        comps = self.parsed_components(self.components)
        if self.kind == "projective":
            return ProjRationalMap(comps, label=self.label)
        inv = self.parsed_components(self.inverse) if self.inverse else None
        return PolyMap(comps, inverse=inv, label=self.label)

    def parsed_testpolys(self):
        return tuple((t, parse_poly(t, self.varnames)) for t in self.testpolys)


def parse_map_file(text, label=""):
    varnames = None
    kind = "affine"
    blocks = {"map": [], "inverse": [], "testpolys": [], "matrix": []}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        head = stripped.split(":", 1)
        if not raw[:1].isspace() and len(head) == 2 and head[0] in (
                "vars", "kind", "map", "inverse", "testpolys", "matrix", "label"):
            key, rest = head[0], head[1].strip()
            if key == "vars":
                varnames = tuple(rest.split())
                if not varnames:
                    raise ParseError(f"line {lineno}: vars line needs names")
                current = None
            elif key == "kind":
                kind = rest
                current = None
            elif key == "label":
                label = rest or label
                current = None
            else:
                current = key
                if rest:
                    blocks[current].append(rest)
        else:
            if current is None:
                raise ParseError(f"line {lineno}: content outside any block")
            blocks[current].append(stripped)
    if varnames is None:
        raise ParseError("map file lacks a vars: line")
    matrix = tuple(tuple(int(tok) for tok in row.split()) for row in blocks["matrix"])
    if matrix and kind == "affine":
        kind = "monomial"
    return MapFile(
        label=label or "map",
        varnames=varnames,
        kind=kind,
        components=tuple(blocks["map"]),
        inverse=tuple(blocks["inverse"]),
        testpolys=tuple(blocks["testpolys"]),
        matrix=matrix,
    )


# ---------------------------------------------------------------------------
# built-ins

BUILTIN_MAP_TEXTS = {
    "henon": """\
vars: x y
map:
    y
    y^2 - x
inverse:
    x^2 - y
    x
testpolys:
    x
    y
    x + y
    x*y
""",
    "identity": """\
vars: x y
map:
    x
    y
testpolys:
    x
    y
    x^2*y - 3
""",
    "fib": """\
vars: x y
matrix:
    1 1
    1 0
""",
    "m21": """\
vars: x y
matrix:
    2 1
    1 1
""",
    "plastic": """\
vars: x y z
matrix:
    0 1 0
    0 0 1
    1 1 0
""",
    "cremona": """\
vars: x y z
kind: projective
map:
    y*z
    x*z
    x*y
""",
    "sigma_tau": """\
vars: x y z
kind: projective
map:
    x*z
    x*y
    y*z
""",
    "triangular": """\
vars: x y z
map:
    y
    z
    x + y*z
inverse:
    z - x*y
    x
    y
testpolys:
    x
    y
    z
    x + y
""",
}

MONOMIAL_BUILTINS = ("fib", "m21", "plastic")


def builtin_names():
    return sorted(BUILTIN_MAP_TEXTS)


def load_builtin(name):
    try:
        text = BUILTIN_MAP_TEXTS[name]
    except KeyError:
        raise ParseError(f"unknown built-in map {name!r}; "
                         f"available: {', '.join(builtin_names())}") from None
    return parse_map_file(text, label=name)


def load_map(spec):
    """A registry name, or a path to a map file."""
    if spec in BUILTIN_MAP_TEXTS:
        return load_builtin(spec)
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read map {spec!r}: {exc}") from exc
    label = spec.rsplit("/", 1)[-1].removesuffix(".map")
    return parse_map_file(text, label=label)


# -- built-in Picard-Manin operators ---------------------------------------

def builtin_operator(name, rank=4):
    """cremona | pell | sigma_tau (the declared stable composite)."""
    if name == "cremona":
        return cremona_operator(rank)
    if name == "pell":
        return pell_operator(rank)
    if name == "sigma_tau":
        perm = exceptional_permutation(rank, (2, 3, 1), label="tau")
        op = perm.compose(cremona_operator(rank))
        return PMOperator(op.matrix, label="sigma_tau", check_form=True)
    raise ParseError(f"unknown built-in operator {name!r}")
