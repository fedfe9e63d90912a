import csv
import io
import json

import pytest

from discrete_dirac import Amplitude, DiscreteForm, Momentum, build_plane_wave, derive_A_minus
from discrete_dirac.cli import main, parse_complex, parse_momenta, parse_sign


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize("text, value", [
    ("i", 1j), ("-i", -1j), ("1+2i", 1 + 2j), ("0.5", 0.5), ("-1.5-0.25i", -1.5 - 0.25j), ("2i", 2j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_helpers():
    assert parse_momenta("0.1,-0.2,0.3") == (0.1, -0.2, 0.3)
    assert parse_sign("+") == 1 and parse_sign("-") == -1
    with pytest.raises(Exception):
        parse_momenta("1,2")


def test_selfcheck_passes(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert {"prop1", "associativity", "projectors", "lemma1", "prop2", "nilpotency"} <= {
        line.split()[1].rstrip(":") for line in lines[:-1]}


def test_selfcheck_fault_injection(capsys):
    code, out, _ = run(capsys, "selfcheck", "--inject-fault", "--only", "prop1")
    assert code != 0
    assert "FAIL prop1" in out


def test_selfcheck_only_prop2(capsys):
    code, data = run_json(capsys, "selfcheck", "--only", "prop2", "--window", "3")
    assert code == 0
    (res,) = data["results"]
    assert res["name"] == "prop2" and "3^4" in res["detail"]


def test_selfcheck_unknown_suite(capsys):
    code, _, err = run(capsys, "selfcheck", "--only", "bogus")
    assert code == 2 and "bogus" in err


def test_planewave_on_shell(capsys):
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--sign", "+",
                          "--seed", "x", "--window", "6")
    assert code == 0 and data["pass"]
    assert data["checks"]["joyce"]["relative"] < 1e-9
    assert data["completion"] == "A_minus"


def test_planewave_off_shell(capsys):
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--p0", "1.2",
                          "--seed", "x", "--window", "6")
    assert code == 1 and not data["pass"]
    assert data["checks"]["joyce"]["relative"] >= 1e-3
    assert data["momentum"]["on_shell"] is False


def test_planewave_hestenes_rest_frame(capsys):
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0,0,0", "--sign", "-", "--seed", "x",
                          "--hestenes", "--alpha12", "i")
    assert code == 0
    assert data["checks"]["hestenes"]["pass"]
    assert data["hestenes_conditions"]["mass_sign"] == 1


def test_planewave_reversed_mass_detected(capsys):
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--hestenes",
                          "--alpha12=-i")
    assert code == 0
    assert data["checks"]["hestenes"]["equation"] == "hestenes_reversed"


def test_planewave_projections(capsys):
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--seed", "e13",
                          "--projections", "--window", "5")
    assert code == 0
    assert set(data["checks"]) == {"joyce", "dirac_kahler_P+0", "dirac_kahler_P-0",
                                   "hestenes_P+12", "hestenes_P-12"}


def test_planewave_singular_seed_reports_error(capsys):
    # at rest with p0 = +m an A_plus seed cannot be completed
    code, _, err = run(capsys, "planewave", "--m", "1", "--p", "0,0,0", "--seed", "x")
    assert code == 2 and "vanishes" in err


def test_planewave_rest_frame_minus_seed(capsys):
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0,0,0", "--seed", "e01")
    assert code == 0 and data["completion"] == "A_plus"


def test_planewave_amplitude_file(tmp_path, capsys):
    _, first = run_json(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--seed", "e12")
    path = tmp_path / "amp.json"
    path.write_text(json.dumps(first["amplitude"]))
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--amplitude", str(path))
    assert code == 0 and data["completion"] == "none"
    assert data["amplitude"] == first["amplitude"]


def test_planewave_amplitude_file_not_completed(tmp_path, capsys):
    path = tmp_path / "amp.json"
    path.write_text(json.dumps(Amplitude(alpha0=1).to_json()))
    code, data = run_json(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--amplitude", str(path))
    assert code == 1 and data["constraint_residual"] > 0


def test_planewave_conflicting_sources(tmp_path, capsys):
    path = tmp_path / "amp.json"
    path.write_text("{}")
    code, _, _ = run(capsys, "planewave", "--m", "1", "--amplitude", str(path), "--seed", "x")
    assert code == 2


def test_planewave_missing_file(capsys):
    code, _, err = run(capsys, "planewave", "--m", "1", "--amplitude", "/nonexistent/amp.json")
    assert code == 2 and err.startswith("error:")


@pytest.mark.parametrize("suffix", [".json", ".csv"])
def test_planewave_dump_round_trip(tmp_path, capsys, suffix):
    path = tmp_path / f"omega{suffix}"
    args = ["planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--seed", "e23", "--window", "3"]
    assert main(args + ["--dump", str(path)]) == 0
    capsys.readouterr()
    text = path.read_text()
    loaded = DiscreteForm.from_json(json.loads(text)) if suffix == ".json" else DiscreteForm.from_csv(text, 3)
    mom = Momentum.on_shell(1, (0.1, 0.2, 0.3))
    assert loaded == build_plane_wave(derive_A_minus(Amplitude.seed("e23"), mom), mom, 3)


def test_planewave_dynamic_range_warning(capsys):
    code, out, err = run(capsys, "planewave", "--m", "1", "--p", "3,3,3", "--window", "8")
    assert "warning" in err
    assert "dynamic range" in out


def test_window_must_be_at_least_two(capsys):
    with pytest.raises(SystemExit):
        main(["planewave", "--m", "1", "--window", "1"])
    capsys.readouterr()


def test_basis(capsys):
    code, data = run_json(capsys, "basis", "--m", "1", "--p", "0.1,0.2,0.3", "--window", "6")
    assert code == 0
    assert len(data["solutions"]) == 8
    assert all(s["joyce"]["pass"] for s in data["solutions"])
    assert data["rank"] == {"+": 4, "-": 4}
    assert data["kernel_dimension"] == {"+": 4, "-": 4}
    audit = data["audit"]["condition_38"]
    assert audit["row_matches"] == [True, True, True, False]
    assert audit["discrepancies"][0]["row"] == 4
    assert "discrepancies" not in data["audit"]["condition_39"]


def test_basis_rest_frame(capsys):
    code, data = run_json(capsys, "basis", "--m", "1", "--p", "0,0,0")
    assert code == 0
    plus = [s for s in data["solutions"] if s["branch"] == "+"]
    assert {s["completion"] for s in plus} == {"A_plus"}
    assert [s["seed"] for s in plus] == ["e01", "e02", "e03", "e"]


def test_basis_trivial(capsys):
    code, _, err = run(capsys, "basis", "--m", "0", "--p", "0,0,0")
    assert code == 2 and "only trivial solutions" in err


def test_basis_csv(capsys):
    code, out, _ = run(capsys, "basis", "--m", "1", "--p", "0.1,0.2,0.3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    assert float(rows[0]["alpha0_re"]) == 1.0


def test_text_format_uses_17_digits(capsys):
    _, out, _ = run(capsys, "planewave", "--m", "1", "--p", "0.1,0.2,0.3")
    line = next(x for x in out.splitlines() if x.startswith("momentum.p0:"))
    mantissa = line.split(": ")[1].split("e")[0].replace("-", "").replace(".", "")
    assert len(mantissa) == 17


@pytest.mark.parametrize("argv", [
    ["selfcheck", "--only", "prop1,prop2", "--window", "3", "--samples", "5"],
    ["planewave", "--m", "1", "--p", "0.1,0.2,0.3", "--projections", "--hestenes"],
    ["basis", "--m", "1", "--p", "0.1,0.2,0.3"],
])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_byte_deterministic(capsys, argv, fmt):
    first = run(capsys, *argv, "--format", fmt)
    second = run(capsys, *argv, "--format", fmt)
    assert first == second
