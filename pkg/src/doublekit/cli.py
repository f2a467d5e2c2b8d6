"""Command-line entry point.

    doublekit run FILE            execute the commands in a definition file
    doublekit exec FILE CMD ...   load FILE, run one command
    doublekit verify ID --trials N --seed S
    doublekit print FILE          canonical form of the declarations

Exit status is 0 when every command succeeded and every property held, 1 when a
property suite reported failures, 2 on any error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import verifier
from .complexes import (
    ChainComplex, ChainMap, DegreeOneMap, double_chain_map, double_complex,
    double_degree_one_map, is_exact_at, is_homotopy,
)
from .double import (
    GeneratorImageHom, RelativeMap, context_for, double_matrix_hom, double_module,
    format_doubled_generators, relative_double_hom,
)
from .errors import DoubleKitError
from .groebner import INFINITE
from .modules import (
    MatrixHom, Submodule, colength, generic_rank, hom_eq_on_domain, image, kernel,
    module_eq,
)
from .session import (
    COMMANDS, Command, Session, SessionError, _command_words, _Scanner, load_session,
    parse_element,
)

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


class CommandError(DoubleKitError):
    pass


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _gens_text(M: Submodule) -> list[str]:
    gens = M.nonzero_gens()
    return [str(g) for g in gens] if gens else ["0"]


def _rows_text(matrix) -> list[str]:
    return ["[" + ", ".join(str(a) for a in row) + "]" for row in matrix]


def _doubled_module_text(session: Session, name: str | None, M: Submodule) -> list[str]:
    if name is not None and name in session.decls:
        dm = session.doubled_module(name)
    else:
        dm = double_module(context_for(M.ring), M)
    return format_doubled_generators(dm) or ["0"]


def _expect_args(words, n: int, usage: str):
    if len(words) != n + 1:
        raise CommandError(f"usage: {usage}")


def _cmd_double(s: Session, words) -> list[str]:
    _expect_args(words, 1, "double <module|hom|complex>")
    name = words[1]
    v = s.get(name, ("module", "hom", "complex"))
    if isinstance(v, Submodule):
        return _doubled_module_text(s, name, v)
    if isinstance(v, MatrixHom):
        return _rows_text(s.get(name + "_D", "hom").matrix if name in s.decls
                          else _double_hom_any(v).matrix)
    C: ChainComplex = v
    CD = s.get(name + "_D", "complex") if name in s.decls else double_complex(context_for(C.ring), C)
    out = []
    for i in reversed(C.degrees):
        out.append(f"degree {i}:")
        out.extend("  " + g for g in _doubled_module_text(s, s.name_of(C.module(i)), C.module(i)))
        if i - 1 in C.degrees:
            out.append(f"d{i}:")
            out.extend("  " + r for r in _rows_text(CD.diff(i).matrix))
    return out


def _double_hom_any(phi: MatrixHom) -> MatrixHom:
    return double_matrix_hom(context_for(phi.ring), phi).as_matrix_hom()


def _cmd_member(s: Session, words) -> list[str]:
    _expect_args(words, 2, "member <module> <element>")
    M = s.get(words[1], "module")
    h = parse_element(s, words[2], M.ring, M.rank)
    return [_bool(M.contains(h))]


def _cmd_eq(s: Session, words) -> list[str]:
    _expect_args(words, 2, "eq <m1> <m2>")
    a = s.get(words[1], ("module", "hom"))
    b = s.get(words[2], ("module", "hom"))
    if isinstance(a, Submodule) and isinstance(b, Submodule):
        return [_bool(module_eq(a, b))]
    if isinstance(a, MatrixHom) and isinstance(b, MatrixHom):
        if not module_eq(a.domain, b.domain) or not module_eq(a.codomain, b.codomain):
            return ["false"]
        return [_bool(hom_eq_on_domain(a, b))]
    raise CommandError("eq compares two modules or two homs")


def _cmd_kernel(s: Session, words) -> list[str]:
    _expect_args(words, 1, "kernel <hom>")
    return _gens_text(kernel(s.get(words[1], "hom")))


def _cmd_image(s: Session, words) -> list[str]:
    _expect_args(words, 1, "image <hom>")
    return _gens_text(image(s.get(words[1], "hom")))


def _cmd_colength(s: Session, words) -> list[str]:
    _expect_args(words, 2, "colength <m> <n>")
    val = colength(s.get(words[1], "module"), s.get(words[2], "module"))
    return ["infinite" if val == INFINITE else str(val)]


def _cmd_rank(s: Session, words) -> list[str]:
    _expect_args(words, 1, "rank <module>")
    return [str(generic_rank(s.get(words[1], "module")))]


def _cmd_groebner(s: Session, words) -> list[str]:
    _expect_args(words, 1, "groebner <module>")
    gb = s.get(words[1], "module").groebner()
    return [str(g) for g in gb] or ["0"]


def _cmd_exact(s: Session, words) -> list[str]:
    _expect_args(words, 1, "exact <complex>")
    C = s.get(words[1], "complex")
    flags = [(i, is_exact_at(C, i)) for i in reversed(C.degrees)]
    return [f"degree {i}: {_bool(e)}" for i, e in flags] + [f"exact: {_bool(all(e for _, e in flags))}"]


def _cmd_homotopy(s: Session, words) -> list[str]:
    _expect_args(words, 3, "homotopy <a> <b> <mu>")
    a: ChainMap = s.get(words[1], "chainmap")
    b: ChainMap = s.get(words[2], "chainmap")
    mu: DegreeOneMap = s.get(words[3], "degmap")
    if a.source is not b.source or a.target is not b.target:
        raise CommandError(f"{words[1]} and {words[2]} have different source or target")
    if mu.source is not a.source or mu.target is not a.target:
        raise CommandError(f"{words[3]} does not run between the complexes of {words[1]}")
    ctx = context_for(a.source.ring)
    CD, DD = double_complex(ctx, a.source), double_complex(ctx, a.target)
    doubled = is_homotopy(double_chain_map(ctx, a, CD, DD), double_chain_map(ctx, b, CD, DD),
                          double_degree_one_map(ctx, mu, CD, DD))
    return [f"homotopy: {_bool(is_homotopy(a, b, mu))}", f"doubled: {_bool(doubled)}"]


def _cmd_relative_double(s: Session, words) -> list[str]:
    _expect_args(words, 2, "relative-double <germ> <hom>")
    pb = s.get(words[1], "germ")
    h: GeneratorImageHom = s.get(words[2], "relhom")
    rel = RelativeMap(pb)
    if h.relative.pullback != pb:
        h = GeneratorImageHom(h.domain, h.codomain, h.images, rel)
    rd = relative_double_hom(rel, h)
    return [f"{u} -> {v}" for u, v in zip(format_doubled_generators(rd.domain), rd.images)] or ["0"]


def _cmd_verify(s: Session | None, words) -> tuple[list[str], bool]:
    p = _VerifyArgs(prog="verify", add_help=False)
    p.add_argument("id")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    ns = p.parse_args(list(words[1:]))
    return _verify(ns.id, ns.trials, ns.seed)


class _VerifyArgs(argparse.ArgumentParser):
    def error(self, message):
        raise CommandError(f"verify: {message}")


def _verify(prop_id: str, trials: int | None, seed: int, replay_dir: str | None = None) -> tuple[list[str], bool]:
    if prop_id not in verifier.PROPERTIES:
        raise CommandError(f"unknown property id {prop_id!r}")
    try:
        spec = verifier.DEFAULT_SPEC.with_(seed=seed)
    except ValueError as e:
        raise CommandError(str(e)) from None
    if trials is not None and trials < 0:
        raise CommandError("--trials must be non-negative")
    rep = verifier.run_property(prop_id, spec, trials, replay_dir=replay_dir)
    return rep.lines(), rep.passed


_HANDLERS = {
    "double": _cmd_double, "member": _cmd_member, "eq": _cmd_eq, "kernel": _cmd_kernel,
    "image": _cmd_image, "colength": _cmd_colength, "rank": _cmd_rank, "exact": _cmd_exact,
    "homotopy": _cmd_homotopy, "relative-double": _cmd_relative_double, "groebner": _cmd_groebner,
}


def run_command(session: Session, command: str | Command | list) -> tuple[str, bool]:
    """Execute one command; returns (output text, whether every property held)."""
    if isinstance(command, Command):
        words = list(command.words)
    elif isinstance(command, str):
        sc = _Scanner(command.strip().rstrip(";") + ";")
        words = _command_words(sc)
    else:
        words = list(command)
    if not words:
        raise CommandError("empty command")
    if words[0] not in COMMANDS:
        raise CommandError(f"unknown command {words[0]!r}")
    ok = True
    try:
        if words[0] == "verify":
            lines, ok = _cmd_verify(session, words)
        else:
            lines = _HANDLERS[words[0]](session, words)
    except CommandError:
        raise
    except DoubleKitError as e:
        raise CommandError(f"{' '.join(words)}: {e}") from None
    return "\n".join(lines) + "\n", ok


def exec_command(session: Session, command) -> str:
    return run_command(session, command)[0]


def _located(cmd: Command, err: Exception) -> str:
    if cmd.line:
        return str(SessionError(str(err), cmd.line, cmd.column, cmd.source))
    return str(err)


def run_session(session: Session, out, echo: bool = True) -> int:
    status = EXIT_OK
    for cmd in session.commands:
        if echo:
            out.write(f"> {' '.join(cmd.words)}\n")
        try:
            text, ok = run_command(session, cmd)
        except DoubleKitError as e:
            out.flush()
            print(f"error: {_located(cmd, e)}", file=sys.stderr)
            return EXIT_ERROR
        out.write(text)
        if not ok:
            status = EXIT_FAILED
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="doublekit", description="Doubles of modules over polynomial rings.")
    p.add_argument("--format", choices=["text"], default="text", help="output format (only text)")
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="execute the commands of a definition file")
    r.add_argument("file")
    e = sub.add_parser("exec", help="load a file and run one command")
    e.add_argument("file")
    e.add_argument("command", nargs=argparse.REMAINDER)
    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("id")
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--replay-dir", help="write replay files for failing trials here")
    pr = sub.add_parser("print", help="print the declarations in canonical form")
    pr.add_argument("file")
    sub.add_parser("list", help="list property ids")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.cmd == "verify":
            lines, ok = _verify(args.id, args.trials, args.seed, args.replay_dir)
            out.write("\n".join(lines) + "\n")
            return EXIT_OK if ok else EXIT_FAILED
        if args.cmd == "list":
            for pid, prop in verifier.PROPERTIES.items():
                out.write(f"{pid}  {prop.summary}\n")
            return EXIT_OK
        session = load_session(Path(args.file))
        if args.cmd == "print":
            out.write(str(session))
            return EXIT_OK
        if args.cmd == "run":
            return run_session(session, out)
        if not args.command:
            raise CommandError("exec needs a command")
        text, ok = run_command(session, " ".join(args.command))
        out.write(text)
        return EXIT_OK if ok else EXIT_FAILED
    except DoubleKitError as e:
        out.flush()
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
