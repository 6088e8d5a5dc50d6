import json

import pytest

from gaussoids.__main__ import main, parse_arguments, to_params
from gaussoids.config import config

FOUR_CYCLE = "n=4\n1,3|2,4\n2,4|1,3\n"
STAR = "n=4\n2,3|1\n2,3|1,4\n2,4|1\n2,4|1,3\n3,4|1\n3,4|1,2\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_count(capsys):
    assert run(capsys, "count", "--n", "4", "--spec", "ELUBF") == (0, "679\n")


def test_count_json(capsys):
    code, out = run(capsys, "count", "--n", "3", "--spec", "eubf", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 8
    assert payload["spec"] == "EUBF"


def test_brute_force_count(capsys):
    assert run(capsys, "count", "--n", "3", "--spec", "BF", "--brute-force") == (0, "4\n")


def test_qgraph_modes(capsys):
    assert run(capsys, "qgraph", "--n", "7", "--k", "3", "--p", "2", "--q", "2", "--degree") == (0, "24\n")
    assert run(capsys, "qgraph", "--n", "4", "--k", "3", "--p", "3", "--q", "2", "--complete") == (0, "true\n")
    assert run(capsys, "qgraph", "--n", "5", "--k", "3", "--p", "3", "--q", "2", "--verify-degree") == (
        0, "degree: 38, observed: 38, verified: true\n")
    code, out = run(capsys, "qgraph", "--n", "5", "--k", "3", "--p", "3", "--q", "2", "--clique")
    assert code == 0
    assert out.splitlines() == ["***00", "**0*0", "**00*", "*0**0", "*0*0*", "*00**"]


def test_qgraph_independent_set_json(capsys):
    code, out = run(capsys, "qgraph", "--n", "5", "--k", "3", "--p", "3", "--q", "2",
                    "--independent-set", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] == len(payload["faces"]) >= 2


def test_qgraph_domain_errors(capsys):
    assert run(capsys, "qgraph", "--n", "5", "--k", "2", "--p", "2", "--q", "2", "--clique")[0] == 1
    assert run(capsys, "qgraph", "--n", "3", "--k", "4", "--p", "2", "--q", "2", "--degree")[0] == 1


def test_check(capsys, write):
    assert run(capsys, "check", write("cycle.txt", FOUR_CYCLE)) == (0, "gaussoid: true\n")
    code, out = run(capsys, "check", write("bad.txt", "n=3\n1,2|\n1,3|\n"))
    assert code == 1
    assert out.startswith("gaussoid: false\nviolation: (G")
    code, out = run(capsys, "check", "--belts", write("bad.txt", "n=4\n1,2|\n1,3|\n"))
    assert code == 1
    assert out == "gaussoid: false\nviolation: ***0\n"


def test_minor_reports_labels(capsys, write):
    code, out = run(capsys, "minor", write("cycle.txt", FOUR_CYCLE), "--frame", "*1*1")
    assert code == 0
    assert out == "n=2\n# frame *1*1 (1,3|2,4)\n# labels 1->1, 2->3\n1,2|\n"


def test_dual(capsys, write):
    assert run(capsys, "dual", write("empty.txt", "n=3\n")) == (0, "n=3\n")
    full = "n=3\n1,2|\n1,2|3\n1,3|\n1,3|2\n2,3|\n2,3|1\n"
    code, out = run(capsys, "dual", write("full.txt", full))
    assert code == 0
    assert len(out.splitlines()) == 7


def test_classify(capsys, write):
    assert run(capsys, "classify", write("star.txt", STAR)) == (0, "profile: E:1 U:6 F:1\nclass: EUF\n")
    code, out = run(capsys, "classify", write("bad.txt", "n=4\n1,2|\n1,3|\n"))
    assert code == 1
    assert out == "profile: FAILURE at ***0\n"


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--n", "3", "--spec", "EF", "--json")
    assert code == 0
    empty, full = json.loads(out)
    assert empty == [] and len(full) == 6


def test_enumerate_limit(capsys):
    code, out = run(capsys, "enumerate", "--n", "4", "--spec", "ELUBF", "--limit", "2", "--json")
    assert code == 0
    first, second = json.loads(out)
    assert first == [] and len(second) == 1


def test_cnf_to_file(capsys, tmp_path):
    target = tmp_path / "ef.cnf"
    assert run(capsys, "cnf", "--n", "3", "--spec", "EF", "-o", str(target)) == (0, "")
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[:2] == ["c spec=EF n=3 varmap=canonical", "p cnf 6 62"]
    assert len(lines) == 64


def test_puzzle(capsys):
    code, out = run(capsys, "puzzle", "--n", "6", "--seed", "7", "--count", "2")
    assert code == 0
    certificates = [line for line in out.splitlines() if line.startswith("gaussoid: ")]
    assert len(certificates) == 2
    assert all(line.startswith("gaussoid: true, frames: ") for line in certificates)
    assert run(capsys, "puzzle", "--n", "6", "--seed", "7", "--count", "2") == (0, out)


def test_graph_gaussoid(capsys, write):
    code, out = run(capsys, "graph-gaussoid", write("cycle.graph", "n=4\n1 2\n2 3\n3 4\n1 4\n"))
    assert (code, out) == (0, FOUR_CYCLE)
    code, out = run(capsys, "graph-gaussoid", "--invert", write("cycle.txt", FOUR_CYCLE))
    assert (code, out) == (0, "n=4\n1 2\n1 4\n2 3\n3 4\n")
    assert run(capsys, "graph-gaussoid", "--invert", write("l.txt", "n=3\n1,2|\n"))[0] == 1


def test_bounds_json(capsys):
    code, out = run(capsys, "bounds", "--n", "5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 5
    assert payload["log2_lower"] == "0.8333"
    assert payload["log2_total_subsets"] == "80"
    assert run(capsys, "bounds", "--n", "4")[0] == 1


def test_exit_codes(capsys, write):
    assert run(capsys, "count", "--n", "5", "--spec", "ELUBF")[0] == 3
    assert run(capsys, "check", "/nonexistent/structure.txt")[0] == 2
    assert run(capsys, "check", write("garbage.txt", "hello\n"))[0] == 2
    assert run(capsys, "minor", write("cycle.txt", FOUR_CYCLE), "--frame", "*2*1")[0] == 2
    with pytest.raises(SystemExit) as excinfo:
        main(["count", "--n", "4", "--spec", "EX"])
    assert excinfo.value.code == 2


def test_to_params():
    params = to_params(parse_arguments(["count", "--n", "4", "--spec", "EB", "--workers", "2"]))
    assert params["command"] == "count"
    assert params["workers"] == 2
    assert params["json"] is False
    assert "debug" not in params


def test_count_uses_the_cache_from_the_command_line(capsys, tmp_path):
    database = tmp_path / "cli" / "counts.db"
    config.set("cache", "use_cache", True)
    config.set("cache", "database_path", str(database))
    assert run(capsys, "count", "--n", "3", "--spec", "EF", "--no-cache") == (0, "2\n")
    assert not database.exists()
    assert run(capsys, "count", "--n", "3", "--spec", "EF") == (0, "2\n")
    assert database.exists()
    assert run(capsys, "count", "--n", "3", "--spec", "EF") == (0, "2\n")


def test_oversized_inputs_hit_the_guard(capsys, write):
    assert run(capsys, "check", write("huge.txt", "n=40\n1,2|\n"))[0] == 3
    assert run(capsys, "graph-gaussoid", write("huge.graph", "n=40\n1 2\n"))[0] == 3
    config.set("limits", "max_input_n", 3)
    assert run(capsys, "check", write("four.txt", FOUR_CYCLE))[0] == 3
    assert run(capsys, "check", write("negative.txt", "n=-1\n"))[0] == 2


def test_package_keeps_the_dispatch_module():
    from gaussoids import execute as dispatch  # pylint: disable=import-outside-toplevel
    assert dispatch.EXIT_GUARD == 3
    assert callable(dispatch.execute)
