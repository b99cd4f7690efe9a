import json
import random
from fractions import Fraction as F

import pytest

from entrench.errors import DuplicateBelief, RankingParseError
from entrench.examples import all_examples, get_example, verify_example
from entrench.formula import parse, print_formula
from entrench.ranking import OrdinalRanking, Ranking, from_ordinal
from entrench.storage import (
    dumps_ordinal,
    dumps_ranking,
    load_ordinal,
    load_ranking,
    loads_ranking,
    save_ordinal,
    save_ranking,
)

from randgen import random_ranking


def rk(*pairs):
    return Ranking([(parse(s), F(n, d)) for s, (n, d) in pairs])


class TestRankingFiles:
    def test_save_load_identity(self, tmp_path):
        rng = random.Random(79)
        for i in range(15):
            r = random_ranking(rng, max_beliefs=8, max_ranks=4, n_atoms=4)
            path = tmp_path / f"r{i}.rk"
            save_ranking(r, path)
            assert load_ranking(path) == r

    def test_decimal_degree(self):
        r = loads_ranking("0.7\ta->b\n")
        assert r.degree_of(parse("a->b")) == F(7, 10)

    def test_rational_degree_and_comments(self):
        text = "# header\n7/10\ta->b\n\n1/3\tq\n"
        r = loads_ranking(text)
        assert r.degree_of(parse("q")) == F(1, 3)

    def test_duplicate_lines_rejected(self):
        with pytest.raises(DuplicateBelief):
            loads_ranking("0.7\tp\n0.5\tp\n")

    def test_parse_error_carries_line_number(self):
        with pytest.raises(RankingParseError) as err:
            loads_ranking("0.7\tp\nnot-a-degree\tq\n")
        assert err.value.line == 2

    def test_bad_formula_carries_line_number(self):
        with pytest.raises(RankingParseError) as err:
            loads_ranking("0.7\tp q\n")
        assert err.value.line == 1

    def test_degree_out_of_range(self):
        with pytest.raises(RankingParseError):
            loads_ranking("1.5\tp\n")

    def test_ordinal_file_round_trip(self, tmp_path):
        o = OrdinalRanking((
            frozenset({parse("a"), parse("b")}),
            frozenset({parse("c")}),
        ))
        path = tmp_path / "o.rk"
        save_ordinal(o, path)
        assert load_ordinal(path) == o

    def test_ordinal_autodetected_by_load_ranking(self, tmp_path):
        path = tmp_path / "o.rk"
        path.write_text("1\ta\n2\tb\n", encoding="utf-8")
        r = load_ranking(path)
        assert r == from_ordinal(OrdinalRanking((
            frozenset({parse("a")}), frozenset({parse("b")}))))

    def test_dumps_sorted_by_degree(self):
        text = dumps_ranking(rk(("low", (1, 4)), ("high", (3, 4))))
        assert text.splitlines() == ["3/4\thigh", "1/4\tlow"]


class TestExampleLibrary:
    def test_all_examples_verify(self):
        for e in all_examples():
            checks = verify_example(e.name)
            assert all(checks.values()), (e.name, checks)

    def test_three_categories_present(self):
        cats = {e.category for e in all_examples()}
        assert cats == {"propositional", "predicate", "strategy-contrast"}

    def test_contrast_example_shape(self):
        e = get_example("contrast-nine")
        r = e.ranking()
        assert len(r) == 9
        assert len(r.distinct_degrees()) == 4
        assert len(set(map(frozenset, e.expected.values()))) == 6

    def test_unknown_example(self):
        with pytest.raises(KeyError):
            get_example("nope")


class TestCli:
    def run(self, *argv):
        import contextlib
        import io

        from entrench.cli import main
        buf_out, buf_err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(buf_out), contextlib.redirect_stderr(buf_err):
            code = main(list(argv))
        return code, buf_out.getvalue(), buf_err.getvalue()

    def test_parse_ok(self):
        code, out, _ = self.run("parse", "(a->b)")
        assert code == 0
        assert out.strip() == "a->b"

    def test_parse_reserved_name(self):
        code, _, err = self.run("parse", "a__b")
        assert code == 2
        assert err.startswith("ReservedNameError")

    def test_parse_whitespace_and_trim(self):
        code, _, err = self.run("parse", "a b")
        assert code == 2
        assert err.startswith("WhitespaceError")
        code, out, _ = self.run("parse", "--trim", "a -> b")
        assert code == 0 and out.strip() == "a->b"

    def test_usage_error(self):
        code, _, _ = self.run("nonsense")
        assert code == 1

    def test_degree(self, tmp_path):
        path = tmp_path / "base.rk"
        save_ranking(rk(("a", (9, 10)), ("a->b", (7, 10))), path)
        code, out, _ = self.run("degree", "b", "--in", str(path))
        assert code == 0
        assert out.strip() == "7/10"

    def test_revise_prints_removed_and_writes(self, tmp_path):
        src = tmp_path / "base.rk"
        dst = tmp_path / "out.rk"
        save_ranking(rk(("p", (1, 2))), src)
        code, out, _ = self.run("revise", "--strategy", "maxi",
                                "--in", str(src), "--out", str(dst),
                                "--", "-p", "0.7")
        assert code == 0
        assert "removed: p" in out
        revised = load_ranking(dst)
        assert revised.degree_of(parse("-p")) == F(7, 10)
        assert parse("p") not in revised

    def test_revise_trace_json(self, tmp_path):
        src = tmp_path / "base.rk"
        save_ranking(rk(("p", (1, 2))), src)
        code, out, _ = self.run("revise", "--in", str(src), "--trace",
                                "--", "-p", "0.7")
        assert code == 0
        payload = out[out.index("{"):out.rindex("}") + 1]
        trace = json.loads(payload)
        assert trace["strategy"] == "maxi"

    def test_extract(self, tmp_path):
        src = tmp_path / "base.rk"
        save_ranking(rk(("p", (4, 5)), ("-p", (3, 5))), src)
        code, out, _ = self.run("extract", "--in", str(src))
        assert code == 0
        assert out.strip() == "4/5\tp"

    def test_integrate(self, tmp_path):
        a, b = tmp_path / "a.rk", tmp_path / "b.rk"
        save_ranking(rk(("p", (4, 5))), a)
        save_ranking(rk(("-p", (3, 5))), b)
        code, out, _ = self.run("integrate", "--in", str(a), "--in", str(b))
        assert code == 0
        assert out.strip() == "4/5\tp"

    def test_reason(self, tmp_path):
        path = tmp_path / "base.rk"
        save_ranking(rk(("a->b", (7, 10))), path)
        code, out, _ = self.run("reason", "a", "b", "--in", str(path))
        assert code == 0
        assert out.strip() == "yes"

    def test_examples_list_and_run(self):
        code, out, _ = self.run("examples", "list")
        assert code == 0
        assert "contrast-nine" in out
        code, out, _ = self.run("examples", "run", "contrast-nine")
        assert code == 0
        assert "6 distinct outcomes" in out

    def test_ordinal_format(self, tmp_path):
        path = tmp_path / "base.rk"
        save_ranking(rk(("a", (9, 10)), ("b", (7, 10)), ("c", (7, 10))), path)
        code, out, _ = self.run("extract", "--in", str(path),
                                "--format", "ordinal")
        assert code == 0
        assert out.splitlines() == ["1\ta", "2\tb", "2\tc"]

    def test_missing_file(self):
        code, _, err = self.run("degree", "p", "--in", "/nonexistent.rk")
        assert code == 1
        assert err.startswith("FileError")


class TestRepl:
    def feed(self, monkeypatch, lines, infile=None):
        import contextlib
        import io

        from entrench.cli import main
        feeder = iter(lines)
        monkeypatch.setattr("builtins.input", lambda prompt="": next(feeder))
        argv = ["repl"] + (["--in", str(infile)] if infile else [])
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(argv)
        return code, buf.getvalue()

    def test_scripted_session(self, monkeypatch, tmp_path):
        base = tmp_path / "base.rk"
        save_ranking(rk(("p", (1, 2))), base)
        out_file = tmp_path / "out.rk"
        code, out = self.feed(monkeypatch, [
            "show",
            "revise -p 0.7",
            "degree -p",
            "undo",
            "degree p",
            "set strategy linear",
            "revise -p 0.7",
            f"save {out_file}",
            "trace",
            "quit",
        ], infile=base)
        assert code == 0
        assert "removed: p" in out
        assert "7/10" in out
        assert "1/2" in out  # degree of p after undo
        saved = load_ranking(out_file)
        assert parse("-p") in saved

    def test_error_reporting(self, monkeypatch):
        code, out = self.feed(monkeypatch, ["parse a__b", "quit"])
        assert code == 0
        assert "ReservedNameError" in out

    def test_whatif_does_not_commit(self, monkeypatch, tmp_path):
        base = tmp_path / "base.rk"
        save_ranking(rk(("p", (1, 2))), base)
        code, out = self.feed(monkeypatch, [
            "whatif -p 0.7",
            "degree p",
            "quit",
        ], infile=base)
        assert code == 0
        assert "1/2" in out


class TestAutoClose:
    def test_cli_parse_auto_closes(self):
        import contextlib
        import io

        from entrench.cli import main
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(["parse", "--auto-close", "P(X)"])
        assert code == 0
        assert buf.getvalue().strip() == "*X(P(X))"

    def test_cli_parse_rejects_open_formula(self):
        import contextlib
        import io

        from entrench.cli import main
        err = io.StringIO()
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(io.StringIO()):
            code = main(["parse", "P(X)"])
        assert code == 2
        assert err.getvalue().startswith("FreeVariableError")
