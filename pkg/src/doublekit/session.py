"""Definition files: a tiny declaration language plus command statements.

    # comment
    include "common.dk";
    ring R vars x1 x2;
    module M in R^2 gens [(x1, x2), (0, x1^2)];
    module F in R^2 free;
    hom f : M -> F matrix [[x1, 0], [0, x2]];
    complex C modules [M, F] diffs [f] low 0;
    germ phi : R -> S sends [t^2, t^3];
    relhom psi : M -> N via phi images [(t^2, 0), (0, t)];
    chainmap a : C -> C maps [1: f1, 0: f0];
    degmap mu : C -> C maps [0: g];
    element h in R^2 = (x1, 0);
    double M;

Any name ``X_D`` refers to the double of ``X`` (rings, modules, homs, complexes)
unless ``X_D`` is itself declared.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .complexes import ChainComplex, ChainMap, DegreeOneMap, double_complex, is_complex
from .double import (
    DoubledModule, GeneratorImageHom, RelativeMap, context_for, double_matrix_hom,
    double_module,
)
from .errors import DoubleKitError, ParseError
from .modules import MatrixHom, ModuleElement, Submodule
from .poly import PolyRing, Polynomial, RingMorphism, parse_poly

COMMANDS = ("double", "member", "eq", "kernel", "image", "colength", "rank", "exact",
            "homotopy", "relative-double", "groebner", "verify")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?\d+")


class SessionError(DoubleKitError):
    """An error tied to a place in a definition file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.source = source

    def __str__(self):
        where = []
        if self.source:
            where.append(self.source)
        if self.line is not None:
            where.append(f"line {self.line}, column {self.column}")
        return ": ".join(where + [self.message])


# -- declarations ----------------------------------------------------------------------

@dataclass(frozen=True)
class Decl:
    """One declaration in structured form; ``data`` holds names and polynomials only,
    so two sessions compare equal iff they declare the same things."""

    kind: str
    name: str
    data: tuple

    def text(self) -> str:
        d = self.data
        if self.kind == "ring":
            return f"ring {self.name} vars {' '.join(d[0])};"
        if self.kind == "module":
            ring, rank, gens = d
            body = "free" if gens is None else f"gens [{', '.join(_tuple_text(g) for g in gens)}]"
            return f"module {self.name} in {ring}^{rank} {body};"
        if self.kind == "element":
            ring, rank, comps = d
            return f"element {self.name} in {ring}^{rank} = {_tuple_text(comps)};"
        if self.kind == "hom":
            dom, cod, rows = d
            return f"hom {self.name} : {dom} -> {cod} matrix {_matrix_text(rows)};"
        if self.kind == "complex":
            mods, diffs, low = d
            tail = f" low {low}" if low else ""
            return f"complex {self.name} modules [{', '.join(mods)}] diffs [{', '.join(diffs)}]{tail};"
        if self.kind == "germ":
            src, tgt, images = d
            return f"germ {self.name} : {src} -> {tgt} sends [{', '.join(map(str, images))}];"
        if self.kind == "relhom":
            dom, cod, germ, images = d
            ims = ", ".join(_tuple_text(v) for v in images)
            return f"relhom {self.name} : {dom} -> {cod} via {germ} images [{ims}];"
        if self.kind in ("chainmap", "degmap"):
            src, tgt, maps = d
            body = ", ".join(f"{i}: {h}" for i, h in maps)
            return f"{self.kind} {self.name} : {src} -> {tgt} maps [{body}];"
        raise ValueError(self.kind)


def _tuple_text(comps) -> str:
    return "(" + ", ".join(str(c) for c in comps) + ")"


def _matrix_text(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in rows) + "]"


@dataclass(frozen=True)
class Command:
    words: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)
    source: str | None = field(default=None, compare=False)

    def text(self) -> str:
        return " ".join(self.words) + ";"


class Session:
    """Named bindings plus the commands of a file, in order of appearance."""

    def __init__(self):
        self.decls: dict[str, Decl] = {}
        self.values: dict[str, object] = {}
        self.commands: list[Command] = []
        self._doubles: dict[str, object] = {}

    def __eq__(self, other):
        if not isinstance(other, Session):
            return NotImplemented
        return list(self.decls.values()) == list(other.decls.values()) and self.commands == other.commands

    def __len__(self):
        return len(self.decls)

    def __contains__(self, name):
        return name in self.decls or self._double_base(name) is not None

    def __str__(self):
        lines = [d.text() for d in self.decls.values()] + [c.text() for c in self.commands]
        return "\n".join(lines) + ("\n" if lines else "")

    def kind_of(self, name: str) -> str:
        if name in self.decls:
            return self.decls[name].kind
        base = self._double_base(name)
        if base is None:
            raise KeyError(name)
        return self.decls[base].kind

    def _double_base(self, name: str) -> str | None:
        if name.endswith("_D") and name not in self.decls:
            base = name[:-2]
            if base in self.decls and self.decls[base].kind in ("ring", "module", "hom", "complex"):
                return base
        return None

    def bind(self, decl: Decl, value):
        if decl.name in self.decls:
            raise DoubleKitError(f"duplicate name {decl.name!r}")
        self.decls[decl.name] = decl
        self.values[decl.name] = value

    def get(self, name: str, kind: str | tuple | None = None):
        kinds = (kind,) if isinstance(kind, str) else kind
        if name in self.values:
            value, actual = self.values[name], self.decls[name].kind
        else:
            base = self._double_base(name)
            if base is None:
                raise DoubleKitError(f"unresolved name {name!r}")
            actual = self.decls[base].kind
            value = self._double_of(base)
        if kinds and actual not in kinds:
            raise DoubleKitError(f"{name!r} is a {actual}, expected {' or '.join(kinds)}")
        return value

    def doubled_module(self, name: str) -> DoubledModule:
        """The DoubledModule record (with generator kinds) for a declared module."""
        self._double_of(name)
        return self._doubles[name + ":rec"]

    def _double_of(self, name: str):
        if name in self._doubles:
            return self._doubles[name]
        kind, value = self.decls[name].kind, self.values[name]
        if kind == "ring":
            out = context_for(value).doubled
        elif kind == "module":
            dm = double_module(context_for(value.ring), value)
            self._doubles[name + ":rec"] = dm
            out = dm.value
        elif kind == "hom":
            dom = self._module_double_for(value.domain)
            cod = self._module_double_for(value.codomain)
            out = double_matrix_hom(context_for(value.ring), value, dom, cod).as_matrix_hom()
        else:
            out = double_complex(context_for(value.ring), value)
        self._doubles[name] = out
        return out

    def _module_double_for(self, M: Submodule) -> DoubledModule | None:
        for n, v in self.values.items():
            if v is M and self.decls[n].kind == "module":
                self._double_of(n)
                return self._doubles[n + ":rec"]
        return None

    def name_of(self, value) -> str | None:
        for n, v in self.values.items():
            if v is value:
                return n
        for n, v in self._doubles.items():
            if v is value and not n.endswith(":rec"):
                return n + "_D"
        return None

    def ring_name(self, ring: PolyRing) -> str | None:
        for n, d in self.decls.items():
            if d.kind == "ring" and self.values[n] == ring:
                return n
        for n, d in self.decls.items():
            if d.kind == "ring" and context_for(self.values[n]).doubled == ring:
                return n + "_D"
        return None


# -- scanning --------------------------------------------------------------------------

class _Scanner:
    def __init__(self, text: str, source: str | None = None):
        self.text = text
        self.source = source
        self.pos = 0
        # line starts for offset -> (line, column)
        self._starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def where(self, pos: int) -> tuple[int, int]:
        lo, hi = 0, len(self._starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._starts[mid] <= pos:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, pos - self._starts[lo] + 1

    def error(self, message: str, pos: int | None = None) -> SessionError:
        line, col = self.where(self.pos if pos is None else pos)
        return SessionError(message, line, col, self.source)

    def skip(self):
        t, n = self.text, len(self.text)
        while self.pos < n:
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif c == "#":
                while self.pos < n and t[self.pos] != "\n":
                    self.pos += 1
            else:
                break

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            raise self.error(f"expected {s!r}, found {self._found()}")

    def _found(self) -> str:
        self.skip()
        if self.pos >= len(self.text):
            return "end of input"
        m = _IDENT.match(self.text, self.pos)
        return repr(m.group(0) if m else self.text[self.pos])

    def ident(self, what: str = "a name") -> tuple[str, int]:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}, found {self._found()}")
        self.pos = m.end()
        return m.group(0), m.start()

    def keyword(self, word: str):
        start = self.pos
        name, pos = self.ident(repr(word))
        if name != word:
            self.pos = start
            raise self.error(f"expected {word!r}, found {name!r}", pos)

    def integer(self, what: str = "an integer") -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}, found {self._found()}")
        self.pos = m.end()
        return int(m.group(0))

    def string(self) -> str:
        self.skip()
        m = re.compile(r'"([^"\n]*)"').match(self.text, self.pos)
        if not m:
            raise self.error(f"expected a quoted path, found {self._found()}")
        self.pos = m.end()
        return m.group(1)

    def span(self) -> tuple[str, int]:
        """Raw text up to the next ',', ')', ']' or ';' outside parentheses."""
        self.skip()
        start, depth, t = self.pos, 0, self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            elif c in ",];" and depth == 0:
                break
            elif c == "\n" and depth == 0:
                pass
            self.pos += 1
        raw = t[start:self.pos]
        stripped = raw.rstrip()
        if not stripped:
            raise self.error("expected a polynomial", start)
        return stripped, start

    def poly(self, ring: PolyRing) -> Polynomial:
        text, start = self.span()
        try:
            return parse_poly(ring, text)
        except ParseError as e:
            raise self.error(str(e), start + e.pos) from None

    def tuple_(self, ring: PolyRing) -> list[Polynomial]:
        self.expect("(")
        comps = [self.poly(ring)]
        while self.accept(","):
            comps.append(self.poly(ring))
        self.expect(")")
        return comps

    def listof(self, item: Callable, open_: str = "[", close: str = "]") -> list:
        self.expect(open_)
        out = []
        if self.accept(close):
            return out
        out.append(item())
        while self.accept(","):
            out.append(item())
        self.expect(close)
        return out


# -- parsing ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, session: Session, base_dir: Path | None, seen: set):
        self.session = session
        self.base_dir = base_dir
        self.seen = seen

    def run(self, text: str, source: str | None):
        sc = _Scanner(text, source)
        while not sc.at_end():
            start = sc.pos
            word, wpos = self._statement_word(sc)
            try:
                self.statement(sc, word, wpos)
            except SessionError:
                raise
            except DoubleKitError as e:
                raise sc.error(str(e), start) from None

    def _statement_word(self, sc: _Scanner) -> tuple[str, int]:
        sc.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*").match(sc.text, sc.pos)
        if not m:
            raise sc.error(f"expected a statement, found {sc._found()}")
        sc.pos = m.end()
        return m.group(0), m.start()

    def statement(self, sc: _Scanner, word: str, wpos: int):
        s = self.session
        if word in COMMANDS:
            words = _command_words(sc)
            line, col = sc.where(wpos)
            s.commands.append(Command((word, *words), line, col, sc.source))
            return
        handler = getattr(self, f"_{word}", None)
        if handler is None or word.startswith("_") or word in ("run", "statement"):
            raise sc.error(f"unknown statement {word!r}", wpos)
        handler(sc)
        sc.expect(";")

    def _name(self, sc: _Scanner) -> str:
        name, pos = sc.ident()
        if name in self.session.decls:
            raise sc.error(f"duplicate name {name!r}", pos)
        return name

    def _ref(self, sc: _Scanner, kind) -> tuple[str, object]:
        name, pos = sc.ident()
        try:
            return name, self.session.get(name, kind)
        except DoubleKitError as e:
            raise sc.error(str(e), pos) from None

    def _include(self, sc: _Scanner):
        rel = sc.string()
        path = (self.base_dir or Path.cwd()) / rel
        key = path.resolve()
        if key in self.seen:
            raise sc.error(f"include cycle through {rel!r}")
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise sc.error(f"cannot read {rel!r}: {e.strerror}") from None
        _Parser(self.session, path.parent, self.seen | {key}).run(text, str(rel))

    def _ring(self, sc: _Scanner):
        name = self._name(sc)
        sc.keyword("vars")
        names = []
        while not sc.peek(";"):
            v, pos = sc.ident("a variable name")
            if v in names:
                raise sc.error(f"duplicate variable {v!r}", pos)
            names.append(v)
        if not names:
            raise sc.error("a ring needs at least one variable")
        self.session.bind(Decl("ring", name, (tuple(names),)), PolyRing(names))

    def _ambient(self, sc: _Scanner) -> tuple[str, PolyRing, int]:
        sc.keyword("in")
        rname, ring = self._ref(sc, "ring")
        sc.expect("^")
        rank = sc.integer("a rank")
        if rank < 1:
            raise sc.error("rank must be positive")
        return rname, ring, rank

    def _vector(self, sc: _Scanner, ring: PolyRing, rank: int) -> tuple:
        start = sc.pos
        comps = sc.tuple_(ring)
        if len(comps) != rank:
            raise sc.error(f"element has {len(comps)} components, expected {rank}", start)
        return tuple(comps)

    def _module(self, sc: _Scanner):
        name = self._name(sc)
        rname, ring, rank = self._ambient(sc)
        if sc.peek("free"):
            sc.keyword("free")
            self.session.bind(Decl("module", name, (rname, rank, None)), Submodule.free(ring, rank))
            return
        sc.keyword("gens")
        gens = sc.listof(lambda: self._vector(sc, ring, rank))
        M = Submodule(ring, rank, [ModuleElement(ring, g) for g in gens])
        self.session.bind(Decl("module", name, (rname, rank, tuple(gens))), M)

    def _element(self, sc: _Scanner):
        name = self._name(sc)
        rname, ring, rank = self._ambient(sc)
        sc.expect("=")
        comps = self._vector(sc, ring, rank)
        self.session.bind(Decl("element", name, (rname, rank, comps)), ModuleElement(ring, comps))

    def _arrow(self, sc: _Scanner, kind) -> tuple[str, object, str, object]:
        sc.expect(":")
        a, va = self._ref(sc, kind)
        sc.expect("->")
        b, vb = self._ref(sc, kind)
        return a, va, b, vb

    def _hom(self, sc: _Scanner):
        name = self._name(sc)
        dn, M, cn, N = self._arrow(sc, "module")
        if M.ring != N.ring:
            raise sc.error(f"{dn} and {cn} live over different rings")
        sc.keyword("matrix")
        start = sc.pos
        rows = sc.listof(lambda: tuple(sc.listof(lambda: sc.poly(M.ring))))
        if len(rows) != N.rank or any(len(r) != M.rank for r in rows):
            raise sc.error(f"matrix must be {N.rank}x{M.rank} for {dn} -> {cn}", start)
        phi = MatrixHom(M, N, rows)
        self.session.bind(Decl("hom", name, (dn, cn, tuple(rows))), phi)

    def _complex(self, sc: _Scanner):
        name = self._name(sc)
        sc.keyword("modules")
        mods = sc.listof(lambda: self._ref(sc, "module"))
        sc.keyword("diffs")
        start = sc.pos
        diffs = sc.listof(lambda: self._ref(sc, "hom"))
        low = 0
        if sc.peek("low"):
            sc.keyword("low")
            low = sc.integer("a degree")
        if not mods:
            raise sc.error("a complex needs at least one module", start)
        C = ChainComplex.from_top([m for _, m in mods], [d for _, d in diffs], low)
        for i in C.degrees:
            d = C.diff(i)
            if i - 1 in C.degrees and d.domain.ring != C.ring:
                raise sc.error("differentials over different rings", start)
        if not is_complex(C):
            raise sc.error(f"complex {name}: d o d is not zero", start)
        self.session.bind(Decl("complex", name, (tuple(n for n, _ in mods), tuple(n for n, _ in diffs), low)), C)

    def _germ(self, sc: _Scanner):
        name = self._name(sc)
        sn, X, tn, Y = self._arrow(sc, "ring")
        sc.keyword("sends")
        start = sc.pos
        images = sc.listof(lambda: sc.poly(Y))
        if len(images) != X.nvars:
            raise sc.error(f"germ needs {X.nvars} images, got {len(images)}", start)
        self.session.bind(Decl("germ", name, (sn, tn, tuple(images))), RingMorphism(X, Y, images))

    def _relhom(self, sc: _Scanner):
        name = self._name(sc)
        dn, M, cn, N = self._arrow(sc, "module")
        sc.keyword("via")
        gn, pb = self._ref(sc, "germ")
        sc.keyword("images")
        ims = sc.listof(lambda: self._vector(sc, N.ring, N.rank))
        hom = GeneratorImageHom(M, N, [ModuleElement(N.ring, v) for v in ims], RelativeMap(pb))
        self.session.bind(Decl("relhom", name, (dn, cn, gn, tuple(ims))), hom)

    def _maps(self, sc: _Scanner, kind: str):
        name = self._name(sc)
        an, C, bn, D = self._arrow(sc, "complex")
        sc.keyword("maps")

        def item():
            i = sc.integer("a degree")
            sc.expect(":")
            hn, h = self._ref(sc, "hom")
            return i, hn, h

        items = sc.listof(item)
        maps = {i: h for i, _, h in items}
        if len(maps) != len(items):
            raise sc.error("a degree is listed twice")
        if kind == "chainmap":
            value = ChainMap(C, D, maps)
        else:
            value = DegreeOneMap(C, D, maps)
        self.session.bind(Decl(kind, name, (an, bn, tuple((i, hn) for i, hn, _ in items))), value)

    def _chainmap(self, sc: _Scanner):
        self._maps(sc, "chainmap")

    def _degmap(self, sc: _Scanner):
        self._maps(sc, "degmap")


def _command_words(sc: _Scanner) -> list[str]:
    """Words up to ';', keeping parenthesised literals whole."""
    words = []
    t = sc.text
    while True:
        sc.skip()
        if sc.pos >= len(t):
            raise sc.error("expected ';' after command")
        if t[sc.pos] == ";":
            sc.pos += 1
            return words
        start, depth = sc.pos, 0
        while sc.pos < len(t):
            c = t[sc.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif depth == 0 and (c.isspace() or c == ";"):
                break
            sc.pos += 1
        if depth:
            raise sc.error("unbalanced parentheses", start)
        words.append(" ".join(t[start:sc.pos].split()))


def parse_session(text: str, base_dir: str | Path | None = None, source: str | None = None) -> Session:
    """Parse a definition file.  ``include`` paths resolve against ``base_dir``."""
    s = Session()
    _Parser(s, Path(base_dir) if base_dir is not None else None, set()).run(text, source)
    return s


def load_session(path: str | Path) -> Session:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise SessionError(f"cannot read {str(p)!r}: {e.strerror}") from None
    return parse_session(text, p.parent)


def parse_element(session: Session, text: str, ring: PolyRing, rank: int) -> ModuleElement:
    """A literal ``(a, b)`` in ``ring``, or the name of a declared element."""
    text = text.strip()
    if _IDENT.fullmatch(text):
        h = session.get(text, "element")
        if h.ring != ring or h.rank != rank:
            raise DoubleKitError(f"element {text!r} does not live in the module's ambient space")
        return h
    sc = _Scanner(text)
    try:
        comps = sc.tuple_(ring)
        if not sc.at_end():
            raise sc.error(f"unexpected {sc._found()} after the element")
    except SessionError as e:
        raise DoubleKitError(f"{e.message} at column {e.column} of {text!r}") from None
    if len(comps) != rank:
        raise DoubleKitError(f"element has {len(comps)} components, expected {rank}")
    return ModuleElement(ring, tuple(comps))


# -- replay serialisation ----------------------------------------------------------------

class _Dumper:
    def __init__(self):
        self.lines: list[str] = []
        self.names: dict[int, str] = {}
        self.rings: list[tuple[PolyRing, str]] = []
        self.used: set[str] = set()
        self.keep = []   # holds objects so ids stay unique

    def fresh(self, base: str) -> str:
        k, name = 1, base
        while name in self.used or name.endswith("_D"):
            k += 1
            name = f"{base}{k}"
        self.used.add(name)
        return name

    def ring(self, R: PolyRing) -> str:
        for S, n in self.rings:
            if S == R:
                return n
        n = self.fresh("R")
        self.rings.append((R, n))
        self.lines.append(Decl("ring", n, (R.variables,)).text())
        return n

    def _named(self, obj, base: str, emit: Callable[[str], None]) -> str:
        if id(obj) in self.names:
            return self.names[id(obj)]
        name = self.fresh(base)
        self.names[id(obj)] = name
        self.keep.append(obj)
        emit(name)
        return name

    def module(self, M: Submodule, base: str = "M") -> str:
        def emit(name):
            r = self.ring(M.ring)
            self.lines.append(Decl("module", name, (r, M.rank, tuple(g.components for g in M.gens))).text())
        return self._named(M, base, emit)

    def hom(self, f: MatrixHom, base: str = "f") -> str:
        def emit(name):
            a, b = self.module(f.domain), self.module(f.codomain)
            self.lines.append(Decl("hom", name, (a, b, f.matrix)).text())
        return self._named(f, base, emit)

    def complex(self, C: ChainComplex, base: str = "C") -> str:
        def emit(name):
            mods = [self.module(C.module(i)) for i in reversed(C.degrees)]
            diffs = [self.hom(C.diff(i)) for i in reversed(C.degrees) if i - 1 in C.degrees]
            self.lines.append(Decl("complex", name, (tuple(mods), tuple(diffs), C.low)).text())
        return self._named(C, base, emit)

    def germ(self, pb: RingMorphism, base: str = "phi") -> str:
        def emit(name):
            a, b = self.ring(pb.source), self.ring(pb.target)
            self.lines.append(Decl("germ", name, (a, b, pb.images)).text())
        return self._named(pb, base, emit)

    def relhom(self, h: GeneratorImageHom, base: str = "psi") -> str:
        def emit(name):
            a, b = self.module(h.domain), self.module(h.codomain)
            g = self.germ(h.relative.pullback)
            self.lines.append(Decl("relhom", name, (a, b, g, tuple(v.components for v in h.images))).text())
        return self._named(h, base, emit)

    def element(self, h: ModuleElement, base: str = "h") -> str:
        def emit(name):
            r = self.ring(h.ring)
            self.lines.append(Decl("element", name, (r, h.rank, h.components)).text())
        return self._named(h, base, emit)

    def any(self, name: str, obj):
        if isinstance(obj, Submodule):
            self.module(obj, name)
        elif isinstance(obj, MatrixHom):
            self.hom(obj, name)
        elif isinstance(obj, ChainComplex):
            self.complex(obj, name)
        elif isinstance(obj, RingMorphism):
            self.germ(obj, name)
        elif isinstance(obj, GeneratorImageHom):
            self.relhom(obj, name)
        elif isinstance(obj, ModuleElement):
            self.element(obj, name)
        elif isinstance(obj, PolyRing):
            self.ring(obj)
        else:
            self.lines.append(f"# {name}: {obj!r}")


def dump_objects(objects, header=()) -> str:
    """Serialise (name, object) pairs as a definition file that re-creates them."""
    d = _Dumper()
    for name, obj in objects:
        d.any(name, obj)
    head = [f"# {h}" for h in header]
    return "\n".join(head + d.lines) + "\n"


__all__ = [
    "Session", "SessionError", "Decl", "Command", "COMMANDS", "parse_session", "load_session",
    "parse_element", "dump_objects",
]
