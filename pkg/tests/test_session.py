import pytest

from doublekit.cli import CommandError, exec_command
from doublekit.errors import DoubleKitError
from doublekit.session import SessionError, load_session, parse_session

BASE = """
ring R vars x;
module M in R^1 gens [(x)];
"""


def test_minimal_session_has_two_bindings():
    s = parse_session(BASE)
    assert len(s) == 2
    assert s.kind_of("R") == "ring" and s.kind_of("M") == "module"


def test_duplicate_name_is_reported():
    with pytest.raises(SessionError) as e:
        parse_session(BASE + "module M in R^1 free;")
    assert "duplicate name 'M'" in str(e.value)
    assert e.value.line == 4


FULL = """# everything the grammar offers
ring R vars x1 x2;
ring S vars t;
module M in R^2 gens [(x1, x2), (0, x1^2)];
module F in R^2 free;
module Z in R^1 gens [];
hom f : M -> F matrix [[x1, 0],[0, x2]];
module K in R^1 gens [(x1), (x2)];
module F1 in R^1 free;
module F2 in R^2 free;
hom d2 : F1 -> F2 matrix [[-x2], [x1]];
hom d1 : F2 -> K matrix [[x1, x2]];
complex C modules [F1, F2, K] diffs [d2, d1];
germ phi : R -> S sends [t^2, t^3];
module N in S^1 gens [(t^2)];
module I in R^1 gens [(x1)];
relhom psi : I -> N via phi images [(t^2)];
hom i1 : F1 -> F1 matrix [[1]];
hom i2 : F2 -> F2 matrix [[1, 0], [0, 1]];
hom iK : K -> K matrix [[1]];
chainmap a : C -> C maps [2: i1, 1: i2, 0: iK];
degmap mu : C -> C maps [];
element h in R^2 = (x1^2, x1*x2);
double M;
member M_D (x1^2, y1^2);
"""


def test_round_trip():
    s = parse_session(FULL)
    text = str(s)
    again = parse_session(text)
    assert again == s
    assert str(again) == text


def test_equality_is_structural():
    a = parse_session("ring R vars x;\nmodule M in R^1 gens [(2*x)];")
    b = parse_session("ring R vars x; module M in R^1 gens [( x + x )];   # same thing")
    c = parse_session("ring R vars x;\nmodule M in R^1 gens [(x)];")
    assert a == b
    assert a != c


def test_syntax_error_position():
    with pytest.raises(SessionError) as e:
        parse_session("ring R vars x;\nmodule M in R^1 gens [(x +)];")
    assert (e.value.line, e.value.column) == (2, 27)
    with pytest.raises(SessionError) as e:
        parse_session("ring R vars x;\nmodule M in R^1 gens [(x, z)];")
    assert e.value.line == 2
    assert "expected 1" in str(e.value) or "unknown variable" in str(e.value)


def test_unknown_variable_position():
    with pytest.raises(SessionError) as e:
        parse_session("ring R vars x;\nmodule M in R^1 gens [(x + 3*q)];")
    assert (e.value.line, e.value.column) == (2, 30)
    assert "unknown variable 'q'" in str(e.value)


def test_unresolved_name():
    with pytest.raises(SessionError) as e:
        parse_session("module M in R^1 free;")
    assert "unresolved name 'R'" in str(e.value)
    assert (e.value.line, e.value.column) == (1, 13)


def test_dimension_mismatches():
    with pytest.raises(SessionError, match="components, expected 2"):
        parse_session("ring R vars x; module M in R^2 gens [(x)];")
    with pytest.raises(SessionError, match="matrix must be 1x2"):
        parse_session("ring R vars x; module A in R^2 free; module B in R^1 free;"
                      " hom f : A -> B matrix [[x]];")
    with pytest.raises(SessionError, match="germ needs 2 images"):
        parse_session("ring R vars x1 x2; ring S vars t; germ g : R -> S sends [t];")


def test_wrong_kind_and_bad_maps():
    with pytest.raises(SessionError, match="is a module, expected ring"):
        parse_session(BASE + "module N in M^1 free;")
    with pytest.raises(SessionError, match="not in the codomain"):
        parse_session(BASE + "module F in R^1 free; hom f : F -> M matrix [[1]];")
    with pytest.raises(SessionError, match="d o d is not zero"):
        parse_session(BASE + "module F in R^1 free; hom f : F -> F matrix [[x]];"
                             " complex C modules [F, F, F] diffs [f, f];")


def test_unknown_statement():
    with pytest.raises(SessionError, match="unknown statement 'modul'"):
        parse_session("ring R vars x;\nmodul M in R^1 free;")


def test_missing_semicolon():
    with pytest.raises(SessionError, match="expected ';'"):
        parse_session("ring R vars x;\nmodule M in R^1 free")


def test_include(tmp_path):
    (tmp_path / "base.dk").write_text(BASE)
    main = tmp_path / "main.dk"
    main.write_text('include "base.dk";\nmodule N in R^1 gens [(x^2)];\n')
    s = load_session(main)
    assert len(s) == 3
    (tmp_path / "loop.dk").write_text('include "loop.dk";\n')
    with pytest.raises(SessionError, match="include cycle"):
        load_session(tmp_path / "loop.dk")
    (tmp_path / "bad.dk").write_text('include "base.dk";\nring R vars y;\n')
    with pytest.raises(SessionError, match="duplicate name 'R'"):
        load_session(tmp_path / "bad.dk")


def test_error_inside_include_names_the_file(tmp_path):
    (tmp_path / "broken.dk").write_text("ring R vars x;\nmodule M in R^1 gens [(y)];\n")
    (tmp_path / "main.dk").write_text('include "broken.dk";\n')
    with pytest.raises(SessionError) as e:
        load_session(tmp_path / "main.dk")
    assert str(e.value).startswith("broken.dk: line 2, column 24")


def test_double_names_resolve():
    s = parse_session(FULL)
    assert s.kind_of("M_D") == "module"
    assert s.get("R_D").variables == ("x1", "x2", "y1", "y2")
    assert s.get("M_D").rank == 4
    assert s.get("f_D").shape == (4, 4)
    assert s.get("C_D").module(1).rank == 4
    with pytest.raises(DoubleKitError):
        s.get("phi_D")


# -- commands ---------------------------------------------------------------------------

def run(text, command):
    return exec_command(parse_session(text), command)


def test_double_module_command():
    assert run(BASE, "double M") == "(x, y)\n(0, (y - x)*y)\n"


def test_member_command():
    assert run(BASE, "member M_D (x^2, y^2)") == "true\n"
    assert run(BASE, "member M (1)") == "false\n"
    s = parse_session(FULL)
    assert exec_command(s, "member M h") == "true\n"


def test_eq_kernel_image_commands():
    text = BASE + "module N in R^1 gens [(x), (x^2)];\nmodule F in R^1 free;\nhom m : F -> M matrix [[x]];\n"
    assert run(text, "eq M N") == "true\n"
    assert run(text, "eq M F") == "false\n"
    assert run(text, "kernel m") == "0\n"
    assert run(text, "image m") == "(x)\n"


def test_colength_and_rank_commands():
    text = BASE + "module F in R^1 free;\nmodule Q in R^1 gens [(x^3)];\n"
    assert run(text, "colength Q F") == "3\n"
    assert run(text, "colength M_D F_D") == "infinite\n"
    assert run(text, "rank M_D") == "2\n"


def test_exact_and_homotopy_commands():
    s = parse_session(FULL)
    assert exec_command(s, "exact C") == "degree 2: true\ndegree 1: true\ndegree 0: true\nexact: true\n"
    text = BASE + ("module F in R^1 free;\nhom one : F -> F matrix [[1]];\nhom zero : F -> F matrix [[0]];\n"
                   "complex C modules [F, F] diffs [one];\n"
                   "chainmap a : C -> C maps [1: one, 0: one];\nchainmap b : C -> C maps [];\n"
                   "degmap mu : C -> C maps [0: one];\n")
    assert run(text, "homotopy a b mu") == "homotopy: true\ndoubled: true\n"


def test_relative_double_command():
    text = ("ring X vars x;\nring T vars t;\ngerm phi : X -> T sends [t^2];\n"
            "module M in X^1 gens [(x)];\nmodule N in T^1 gens [(t^2)];\n"
            "relhom psi : M -> N via phi images [(t^2)];\n")
    out = run(text, "relative-double phi psi")
    assert out == "(x, y) -> (t^2, t_2^2)\n(0, (y - x)*y) -> (0, -t^2*t_2^2 + t_2^4)\n"


def test_command_errors():
    with pytest.raises(CommandError, match="unknown command"):
        run(BASE, "frobnicate M")
    with pytest.raises(CommandError, match="usage: kernel <hom>"):
        run(BASE, "kernel")
    with pytest.raises(DoubleKitError, match="is a module, expected hom"):
        run(BASE, "kernel M")
    with pytest.raises(CommandError, match="colength M F"):
        run(BASE + "module F in R^1 gens [(x^2)];", "colength M F")
    with pytest.raises(CommandError, match="unknown property id"):
        run(BASE, "verify NOPE")


def test_verify_command():
    assert run(BASE, "verify P3.4-a --trials 50 --seed 7") == "PROP P3.4-a trials=50 failures=0\n"
