import json

import pytest
from fastapi.testclient import TestClient

from natded.cli import main
from natded.corpus import corpus, lookup
from natded.formats import encode_proof, save_formula_file, save_proof_file
from natded.service import ServiceConfig, create_app
from natded.syntax import Pre

GOLDEN_FIRST_LINE = (
    '1 OK (Imp (Con (Pre "P" []) (Imp (Pre "P" []) (Pre "Q" []))) (Pre "Q" [])) []'
    "  Imp_I"
)


@pytest.fixture()
def example_proof_file(tmp_path):
    path = tmp_path / "huth_ryan_example.ndproof"
    save_proof_file(path, lookup("huth_ryan_example").proof)
    return path


class TestCheck:
    def test_accepts_example(self, example_proof_file, capsys):
        assert main(["check", str(example_proof_file)]) == 0
        assert capsys.readouterr().out.strip() == "accepted"

    def test_rejects_mutated_proof(self, tmp_path, capsys):
        doc = encode_proof(lookup("huth_ryan_example").proof)
        doc["root"]["children"][0]["children"][0]["children"][0]["goal"]["assumptions"] = []
        path = tmp_path / "broken.ndproof"
        path.write_text(json.dumps(doc))
        assert main(["check", str(path)]) == 1
        out = capsys.readouterr().out
        assert "[0, 0, 0]" in out and "NotAnAssumption" in out

    def test_decode_error_exit_code(self, tmp_path):
        path = tmp_path / "bad.ndproof"
        path.write_text('{"format_version": 1, "root": {"rule": "Copy"}}')
        assert main(["check", str(path)]) == 2

    def test_unreadable_file(self, tmp_path):
        assert main(["check", str(tmp_path / "missing.ndproof")]) == 2

    def test_agrees_with_check_endpoint_on_corpus(self, tmp_path):
        client = TestClient(create_app(ServiceConfig()))
        for entry in corpus():
            if entry.proof is None:
                continue
            path = tmp_path / f"{entry.name}.ndproof"
            save_proof_file(path, entry.proof)
            cli_accepted = main(["check", str(path)]) == 0
            api_accepted = client.post(
                "/api/check", json=encode_proof(entry.proof)
            ).json()["accepted"]
            assert cli_accepted == api_accepted


class TestPrint:
    def test_ok_format_golden(self, example_proof_file, capsys):
        assert main(["print", str(example_proof_file), "--format", "ok"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == GOLDEN_FIRST_LINE
        assert len(lines) == 6

    def test_tree_format(self, example_proof_file, capsys):
        assert main(["print", str(example_proof_file), "--format", "tree"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("- Imp_I")
        assert "(p := " in out


class TestValidate:
    def test_pierce_is_valid(self, tmp_path, capsys):
        path = tmp_path / "pierce.fol"
        save_formula_file(path, lookup("pierce").goal)
        assert main(["validate", str(path), "--max-size", "3", "--budget", "10000"]) == 0
        assert "valid up to 3 (exhaustive)" in capsys.readouterr().out

    def test_atom_countermodel(self, tmp_path, capsys):
        path = tmp_path / "atom.fol"
        save_formula_file(path, Pre("P", ()))
        assert main(["validate", str(path)]) == 1
        assert "countermodel" in capsys.readouterr().out

    def test_parse_error_exit_code(self, tmp_path):
        path = tmp_path / "broken.fol"
        path.write_text("Imp (")
        assert main(["validate", str(path)]) == 2

    def test_deterministic_given_seed(self, tmp_path, capsys):
        path = tmp_path / "wide.fol"
        path.write_text('Pre "S" [Var 0, Var 1]')
        main(["validate", str(path), "--budget", "5", "--seed", "3"])
        first = capsys.readouterr().out
        main(["validate", str(path), "--budget", "5", "--seed", "3"])
        assert capsys.readouterr().out == first


class TestFuzz:
    def test_small_run_is_sound(self, capsys):
        code = main([
            "fuzz-soundness", "--count", "20", "--max-size", "2",
            "--seed", "7", "--budget", "300",
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "proofs generated: 20/20" in out
        assert "countermodels: 0" in out

    def test_deterministic_given_seed(self, capsys):
        flags = ["fuzz-soundness", "--count", "10", "--max-size", "2",
                 "--seed", "3", "--budget", "200"]
        main(flags)
        first = capsys.readouterr().out
        main(flags)
        assert capsys.readouterr().out == first


class TestCorpus:
    def test_listing(self, capsys):
        assert main(["corpus"]) == 0
        out = capsys.readouterr().out
        assert "huth_ryan_example" in out
        assert "[goal only]" in out and "[proof]" in out

    def test_run_all(self, capsys):
        assert main(["corpus", "--run-all", "--budget", "2000"]) == 0
        out = capsys.readouterr().out
        assert "check: accepted" in out
        assert "REJECTED" not in out and "COUNTERMODEL" not in out

    def test_directory_override(self, tmp_path, capsys):
        save_formula_file(tmp_path / "solo.fol", Pre("P", ()))
        assert main(["corpus", "--dir", str(tmp_path)]) == 0
        assert "solo" in capsys.readouterr().out


class TestUsageErrors:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 64

    def test_missing_argument(self):
        with pytest.raises(SystemExit) as err:
            main(["check"])
        assert err.value.code == 64

    def test_bad_flag_value(self):
        with pytest.raises(SystemExit) as err:
            main(["fuzz-soundness", "--count", "0"])
        assert err.value.code == 64

    def test_bad_format_choice(self, example_proof_file):
        with pytest.raises(SystemExit) as err:
            main(["print", str(example_proof_file), "--format", "latex"])
        assert err.value.code == 64
