import json

import pytest

from conftest import bubble_graph, gamma2_graph, sunset_graph, tadpole_graph
from rbren import serde
from rbren.cli import main, run
from rbren.motives import parse_class
from rbren.poly import parse_poly


@pytest.fixture
def sunset_file(tmp_path):
    path = tmp_path / "sunset.json"
    path.write_text(json.dumps(serde.dump_graph(sunset_graph())))
    return str(path)


@pytest.fixture
def library_file(tmp_path):
    lib = {
        "dim": 4,
        "graphs": {
            "B": serde.dump_graph(bubble_graph()),
            "Gamma2": serde.dump_graph(gamma2_graph()),
            "tadpole": serde.dump_graph(tadpole_graph()),
            "sunset": serde.dump_graph(sunset_graph()),
        },
    }
    path = tmp_path / "library.json"
    path.write_text(json.dumps(lib))
    return str(path)


@pytest.fixture
def gamma2_file(tmp_path):
    data = serde.dump_graph(gamma2_graph())
    data["name"] = "Gamma2"
    path = tmp_path / "gamma2.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_symanzik_psi_payload(sunset_file):
    result = run(["symanzik", "psi", sunset_file])
    assert result.status == 0
    assert result.payload == {"psi": "t1*t2+t1*t3+t2*t3"}


def test_symanzik_psi_output_is_parseable(sunset_file, capsys):
    assert main(["symanzik", "psi", sunset_file]) == 0
    out = json.loads(capsys.readouterr().out)
    parsed = parse_poly(out["psi"], ("t1", "t2", "t3"))
    assert str(parsed) == out["psi"]


def test_motive_gl_payload(capsys):
    assert main(["motive", "gl", "2"]) == 0
    out = capsys.readouterr().out
    assert out == '"L^4 - L^3 - L^2 + L"\n'
    assert parse_class(json.loads(out)) == parse_class("L^4 - L^3 - L^2 + L")


def test_motive_grass_and_pole_bound():
    assert run(["motive", "grass", "2", "4"]).payload == "L^4 + L^3 + 2*L^2 + L + 1"
    assert run(["motive", "pole-bound", "14", "7", "4"]).payload == {
        "pole_order_bound": 38
    }


def test_motive_sigma():
    result = run(["motive", "sigma", "3", "1"])
    assert result.status == 0
    assert result.payload["f"] == 2
    assert result.payload["components"] == 1
    arr = serde.load_arrangement(result.payload["arrangement"])
    assert len(arr.hyperplanes) == 1


def test_motive_arrangement_round_trip(tmp_path):
    result = run(["motive", "sigma", "2", "0"])
    arr_path = tmp_path / "arr.json"
    arr_path.write_text(json.dumps(result.payload["arrangement"]))
    out = run(["motive", "arrangement", str(arr_path)])
    assert out.status == 0
    assert parse_class(out.payload["class"]) == parse_class(result.payload["class"])
    assert "char_poly" in out.payload


def test_hopf_coproduct_cli(gamma2_file, library_file):
    result = run(
        ["hopf", "coproduct", "--graph", gamma2_file, "--library", library_file]
    )
    assert result.status == 0
    tensor = serde.load_tensor(result.payload["coproduct"])
    from rbren.hopf import TensorElement

    expected = TensorElement(
        2,
        {
            (("Gamma2",), ()): 1,
            ((), ("Gamma2",)): 1,
            (("B",), ("B",)): 2,
        },
    )
    assert tensor == expected


def test_graph_info_and_trees(sunset_file):
    info = run(["graph", "info", sunset_file]).payload
    assert info["loops"] == 2
    assert info["edge_connectivity"] == 3
    assert info["is_1pi"]
    trees = run(["graph", "trees", sunset_file]).payload
    assert trees == {"spanning_trees": [["e1"], ["e2"], ["e3"]]}


def test_graph_quotient_round_trip(sunset_file):
    result = run(["graph", "quotient", sunset_file, "--edges", "e1,e2"])
    assert result.status == 0
    q = serde.load_graph(result.payload["quotient"])
    assert len(q.vertices) == 1


def test_birkhoff_factorize_cli(tmp_path, library_file):
    char = {
        "target": {"kind": "laurent_ms"},
        "rule": "pole_power",
        "c": "1/2",
    }
    char_path = tmp_path / "char.json"
    char_path.write_text(json.dumps(char))
    result = run(
        [
            "birkhoff",
            "factorize",
            "Gamma2",
            "--character",
            str(char_path),
            "--library",
            library_file,
            "--verify",
        ]
    )
    assert result.status == 0
    assert result.payload["verified"] is True
    defect = serde.load_laurent(result.payload["defect"])
    assert defect.is_zero()


def test_rb_sweep_cli():
    result = run(
        ["rb", "sweep", "--kind", "nc_log_form", "--pairs", "25", "--seed", "3"]
    )
    assert result.status == 0
    assert result.payload["all_zero"] is True


def test_rb_defect_cli(tmp_path):
    from rbren import RBAlgebraDescriptor
    from rbren.poly import parse_laurent

    desc = RBAlgebraDescriptor.laurent_ms()
    algebra = tmp_path / "algebra.json"
    algebra.write_text(json.dumps(serde.dump_descriptor(desc)))
    x = tmp_path / "x.json"
    x.write_text(
        json.dumps(serde.dump_laurent(parse_laurent("z^-1", ("z",), ())))
    )
    result = run(
        ["rb", "defect", str(x), str(x), "--algebra", str(algebra)]
    )
    assert result.status == 0
    assert result.payload["zero"] is True


def test_rb_residue_cli(tmp_path):
    from rbren import RBAlgebraDescriptor

    desc = RBAlgebraDescriptor.nc_log(2, 2)
    algebra = tmp_path / "algebra.json"
    algebra.write_text(json.dumps(serde.dump_descriptor(desc)))
    omega = desc.form((("dlog1", "dx1"), "x1"))
    element = tmp_path / "element.json"
    element.write_text(json.dumps(serde.dump_exterior(omega, desc)))
    result = run(
        ["rb", "residue", str(element), "--algebra", str(algebra), "--index", "1"]
    )
    assert result.status == 0
    got = serde.load_exterior(result.payload["residue"])
    assert got == desc.form((("dx1",), "x1"))


def test_deterministic_output(sunset_file, capsys):
    main(["symanzik", "psi", sunset_file])
    first = capsys.readouterr().out
    main(["symanzik", "psi", sunset_file])
    second = capsys.readouterr().out
    assert first == second


def test_domain_error_exit_code(tmp_path, capsys):
    g = {"vertices": ["a", "b"], "internal_edges": [], "external_edges": []}
    path = tmp_path / "disconnected.json"
    path.write_text(json.dumps(g))
    assert main(["graph", "trees", str(path)]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["error"]["code"] == "disconnected-graph"


def test_usage_error_exit_code():
    assert run(["frobnicate"]).status == 2
    assert run([]).status == 2


def test_eta_cli(sunset_file):
    result = run(["symanzik", "eta", sunset_file, "--dim", "4"])
    assert result.payload == {
        "ambient_dim": 4,
        "denominator_exponent": 3,
        "form_degree": 3,
        "numerator_exponent": 1,
    }


def test_cli_remaining_commands_smoke(tmp_path, sunset_file, gamma2_file, library_file):
    char = {"target": {"kind": "laurent_ms"}, "rule": "pole_power", "c": "0"}
    char_path = tmp_path / "char.json"
    char_path.write_text(json.dumps(char))
    lib = ["--library", library_file]
    commands = [
        ["graph", "cuts", sunset_file],
        ["graph", "key", sunset_file],
        ["graph", "superficial", sunset_file, "--dim", "4"],
        ["graph", "divergent", sunset_file, "--dim", "4"],
        ["graph", "divergent", sunset_file, "--dim", "4", "--even-only"],
        ["hopf", "antipode", "--graph", gamma2_file] + lib,
        ["hopf", "counit", "--graph", gamma2_file] + lib,
        ["hopf", "reduced", "--graph", gamma2_file, "-n", "2"] + lib,
        ["birkhoff", "atkinson", "Gamma2", "--character", str(char_path)] + lib,
        ["symanzik", "second", sunset_file],
        ["symanzik", "matrix", sunset_file],
        ["symanzik", "check", sunset_file],
        ["symanzik", "upsilon", sunset_file],
        ["motive", "projective", "3"],
        ["rb", "sweep", "--kind", "saito_form", "--pairs", "10", "--seed", "1"],
    ]
    for argv in commands:
        result = run(argv)
        assert result.status == 0, (argv, result.payload)


def test_cli_nonrecursive_rejects_laurent_target(tmp_path, library_file):
    char = {"target": {"kind": "laurent_ms"}, "rule": "pole_power", "c": "0"}
    char_path = tmp_path / "char.json"
    char_path.write_text(json.dumps(char))
    result = run(
        ["birkhoff", "nonrecursive", "B", "--character", str(char_path),
         "--library", library_file]
    )
    assert result.status == 1
    assert result.payload["error"]["code"] == "precondition"


def test_missing_and_malformed_input_files(tmp_path):
    result = run(["graph", "info", str(tmp_path / "missing.json")])
    assert result.status == 1
    assert result.payload["error"]["code"] == "io"
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    result = run(["graph", "info", str(bad)])
    assert result.status == 1
    assert result.payload["error"]["code"] == "bad-input"


def test_rb_t_on_saito_element(tmp_path):
    from rbren import RBAlgebraDescriptor

    desc = RBAlgebraDescriptor.saito(2)
    algebra = tmp_path / "algebra.json"
    algebra.write_text(json.dumps(serde.dump_descriptor(desc)))
    w = desc.saito_element(
        "x1+1", desc.form((("dx1",), "x2")), desc.form(((), "1"))
    )
    element = tmp_path / "element.json"
    element.write_text(json.dumps(serde.dump_saito(w)))
    result = run(["rb", "t", str(element), "--algebra", str(algebra)])
    assert result.status == 0
    back = serde.load_saito(result.payload["t"])
    assert back.eta.is_zero() and back.xi == w.xi
