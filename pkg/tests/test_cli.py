import json

import pytest

from defcol import dump_embedding, dump_graph, load_graph, make_graph
from defcol.cli import main

from corpus import k3_embedding


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def k4_file(tmp_path):
    g = make_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    path = tmp_path / "k4.graph"
    path.write_text(dump_graph(g))
    return str(path)


def c5_file(tmp_path):
    g = make_graph(5, [(i, (i + 1) % 5) for i in range(5)])
    path = tmp_path / "c5.graph"
    path.write_text(dump_graph(g))
    return str(path)


class TestSolveCommand:
    def test_sat_exit_zero(self, tmp_path, capsys):
        code, out, _ = run(capsys, "solve", "--graph", c5_file(tmp_path), "--spec", "0,1")
        assert code == 0
        doc = json.loads(out)
        assert doc["outcome"] == "sat"
        assert doc["coloring"]

    def test_unsat_exit_ten(self, tmp_path, capsys):
        code, out, _ = run(capsys, "solve", "--graph", k4_file(tmp_path), "--spec", "0,1")
        assert code == 10
        assert json.loads(out)["outcome"] == "unsat"

    def test_budget_exit_twenty(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "solve", "--graph", k4_file(tmp_path), "--spec", "0,1", "--budget", "1"
        )
        assert code == 20
        assert json.loads(out)["outcome"] == "budget"

    def test_big_instance_requires_budget(self, tmp_path, capsys):
        code, _, _ = run(capsys, "gadget", "s", "--k", "1", "--out", str(tmp_path / "s"))
        assert code == 0
        code, _, err = run(
            capsys, "solve", "--graph", str(tmp_path / "s.graph"), "--spec", "1,1"
        )
        assert code == 2
        assert "--budget" in err

    def test_force_forbid_by_label(self, tmp_path, capsys):
        code, _, _ = run(capsys, "gadget", "huv", "--out", str(tmp_path / "huv"))
        assert code == 0
        argv = [
            "solve", "--graph", str(tmp_path / "huv.graph"), "--spec", "1,1",
            "--force", "u=2", "--force", "v=2",
        ]
        for interior in "abcd":
            argv += ["--forbid", f"{interior}=2"]
        code, out, _ = run(capsys, *argv)
        assert code == 10

    def test_emit_cnf(self, tmp_path, capsys):
        out_path = tmp_path / "k4.cnf"
        code, _, _ = run(
            capsys, "solve", "--graph", k4_file(tmp_path), "--spec", "0,1",
            "--emit-cnf", str(out_path),
        )
        assert code == 0
        text = out_path.read_text()
        assert text.startswith("c defcol-cnf v1")
        assert "p cnf" in text

    def test_unreadable_file(self, capsys):
        code, _, err = run(capsys, "solve", "--graph", "/no/such/file", "--spec", "0,1")
        assert code == 2
        assert "cannot read" in err

    def test_malformed_spec(self, tmp_path, capsys):
        code, _, err = run(capsys, "solve", "--graph", c5_file(tmp_path), "--spec", "a,b")
        assert code == 2


class TestOracleCommand:
    def test_matches_solve(self, tmp_path, capsys):
        path = k4_file(tmp_path)
        code_solve, out_solve, _ = run(capsys, "solve", "--graph", path, "--spec", "0,1")
        code_oracle, out_oracle, _ = run(capsys, "oracle", "--graph", path, "--spec", "0,1")
        assert code_solve == code_oracle == 10
        assert json.loads(out_solve)["outcome"] == json.loads(out_oracle)["outcome"]


class TestGadgetCommands:
    def test_huv_roundtrip_and_checks(self, tmp_path, capsys):
        code, out, _ = run(capsys, "gadget", "huv", "--out", str(tmp_path / "huv"))
        assert code == 0
        doc = json.loads(out)
        assert doc["vertex_count"] == 6
        assert set(doc["terminals"]) == {"u", "a", "b", "c", "d", "v"}
        code, out, _ = run(capsys, "check", "c4c5", "--graph", doc["files"]["graph"])
        assert code == 0
        assert json.loads(out)["c4c5_free"] is True

    def test_non1k_generation(self, tmp_path, capsys):
        code, out, _ = run(capsys, "gadget", "non1k", "--k", "1", "--out", str(tmp_path / "g"))
        assert code == 0
        doc = json.loads(out)
        assert doc["vertex_count"] == 120
        g = load_graph((tmp_path / "g.graph").read_text())
        assert g.vertex_count == 120
        assert (tmp_path / "g.emb").exists()

    def test_non1k_pipeline_is_unsat(self, tmp_path, capsys):
        code, _, _ = run(capsys, "gadget", "non1k", "--k", "1", "--out", str(tmp_path / "g"))
        assert code == 0
        code, out, _ = run(
            capsys, "solve", "--graph", str(tmp_path / "g.graph"), "--spec", "1,1",
            "--budget", "10000000",
        )
        assert code == 10
        assert json.loads(out)["outcome"] == "unsat"

    def test_byte_identical_across_runs(self, tmp_path, capsys):
        run(capsys, "gadget", "s", "--k", "1", "--out", str(tmp_path / "a"))
        run(capsys, "gadget", "s", "--k", "1", "--out", str(tmp_path / "b"))
        assert (tmp_path / "a.graph").read_bytes() == (tmp_path / "b.graph").read_bytes()
        assert (tmp_path / "a.emb").read_bytes() == (tmp_path / "b.emb").read_bytes()

    def test_reduce(self, tmp_path, capsys):
        c6 = make_graph(6, [(i, (i + 1) % 6) for i in range(6)])
        src = tmp_path / "c6.graph"
        src.write_text(dump_graph(c6))
        code, out, _ = run(
            capsys, "reduce", "--graph", str(src), "--k", "2", "--out", str(tmp_path / "r")
        )
        assert code == 0
        assert json.loads(out)["vertex_count"] == 18
        code, out, _ = run(capsys, "check", "c4c5", "--graph", str(tmp_path / "r.graph"))
        assert json.loads(out)["c4c5_free"] is True


class TestCheckCommands:
    def test_girth(self, tmp_path, capsys):
        code, out, _ = run(capsys, "check", "girth", "--graph", c5_file(tmp_path))
        assert code == 0
        assert json.loads(out)["girth"] == 5

    def test_girth_infinite(self, tmp_path, capsys):
        path = tmp_path / "tree.graph"
        path.write_text(dump_graph(make_graph(3, [(0, 1), (1, 2)])))
        code, out, _ = run(capsys, "check", "girth", "--graph", str(path))
        assert json.loads(out)["girth"] == "infinite"

    def test_lemmas_requires_embedding(self, tmp_path, capsys):
        code, _, err = run(capsys, "check", "lemmas", "--graph", c5_file(tmp_path))
        assert code == 2

    def test_lemmas_report(self, tmp_path, capsys):
        path = tmp_path / "k3.emb"
        path.write_text(dump_embedding(k3_embedding()))
        code, out, _ = run(capsys, "check", "lemmas", "--embedding", str(path))
        assert code == 0
        reports = json.loads(out)["reports"]
        assert reports["bad2_face_degrees"]["status"] == "degenerate"


class TestAuditCommand:
    def test_k3_audit(self, tmp_path, capsys):
        path = tmp_path / "k3.emb"
        path.write_text(dump_embedding(k3_embedding()))
        code, out, _ = run(capsys, "audit", "--embedding", str(path), "--ruleset", "44")
        assert code == 0
        doc = json.loads(out)
        assert doc["conservation"] is True
        assert doc["final_total"] == "-12"
        assert doc["negative"]

    def test_audit_to_file(self, tmp_path, capsys):
        emb_path = tmp_path / "k3.emb"
        emb_path.write_text(dump_embedding(k3_embedding()))
        out_path = tmp_path / "audit.json"
        code, out, _ = run(
            capsys, "audit", "--embedding", str(emb_path), "--ruleset", "35",
            "--out", str(out_path),
        )
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["ruleset"] == "35"

    def test_unknown_ruleset(self, tmp_path, capsys):
        emb_path = tmp_path / "k3.emb"
        emb_path.write_text(dump_embedding(k3_embedding()))
        with pytest.raises(SystemExit) as exc:
            main(["audit", "--embedding", str(emb_path), "--ruleset", "99"])
        assert exc.value.code == 2


class TestUsageErrors:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unknown_flag(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["gadget", "huv", "--out", str(tmp_path / "x"), "--bogus"])
        assert exc.value.code == 2
