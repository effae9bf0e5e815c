import json
from importlib import resources

import pytest

from homconformal.cli import main
from homconformal.serialize import dump_json, load_json


def data_path(name: str) -> str:
    return str(resources.files("homconformal").joinpath("data").joinpath(name))

SHP = data_path("super_heisenberg_delta_plus.json")
SHM = data_path("super_heisenberg_delta_minus.json")
CURB = data_path("cur_borel.json")
ADJ = data_path("adjoint_cur_borel.json")
BOREL_G = data_path("borel_finite.json")
ASSOC = data_path("upper_triangular_assoc.json")
F2 = data_path("double_scaling_operator.json")
PSI = data_path("heisenberg_central_cochain.json")
GAMMA = data_path("heisenberg_central_one_cochain.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- check ------------------------------------------------------------------


def test_check_passes_on_shipped_fixtures(capsys):
    for path in (SHP, SHM, CURB):
        code, out, _ = run(capsys, "check", path)
        assert code == 0
        assert "overall: PASS" in out


def test_check_json_format(capsys):
    code, out, _ = run(capsys, "check", SHP, "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["report"]["ok"] is True
    names = {c["check"] for c in blob["report"]["checks"]}
    assert {"grading", "skew_symmetry", "hom_jacobi", "multiplicative", "regular"} <= names


def test_check_exit_codes_are_deterministic(capsys, tmp_path):
    # sabotage the twisted Jacobi identity: add [z _l o1] = o1
    data = load_json(open(SHP).read())
    data["brackets"]["z|o1"] = [{"target": "o1", "poly": "1"}]
    bad = tmp_path / "bad.json"
    bad.write_text(dump_json(data))
    for _ in range(2):
        code, out, _ = run(capsys, "check", str(bad))
        assert code == 1
        assert "(o1, z, o1)" in out


def test_check_input_error_exit_2(capsys, tmp_path):
    missing = tmp_path / "missing.json"
    code, _, err = run(capsys, "check", str(missing))
    assert code == 2 and "input error" in err
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    code, _, err = run(capsys, "check", str(garbled))
    assert code == 2 and "line 1" in err
    unknown = tmp_path / "unknown.json"
    data = load_json(open(SHP).read())
    data["surprise"] = True
    unknown.write_text(dump_json(data))
    code, _, err = run(capsys, "check", str(unknown))
    assert code == 2 and "unknown field" in err


def test_check_with_seeded_oracle(capsys):
    code, out, _ = run(capsys, "check", SHP, "--seed", "11")
    assert code == 0
    assert "oracle_agrees: True" in out


def test_delta_override(capsys):
    """Flipping the sign without adjusting the stored constants breaks
    multiplicativity (the minus-fixture file carries the adjusted data)."""
    code, out, _ = run(capsys, "check", SHP, "--delta-override", "-1")
    assert code == 1
    assert "[FAIL] multiplicative" in out
    assert "[PASS] hom_jacobi" in out
    code, _, _ = run(capsys, "check", SHM, "--delta-override", "-1")
    assert code == 0  # matching override is a no-op


# -- rep --------------------------------------------------------------------


def test_rep_check(capsys):
    code, out, _ = run(capsys, "rep", "check", CURB, ADJ)
    assert code == 0
    code, out, _ = run(capsys, "rep", "check", CURB, ADJ, "--strict-rep")
    assert code == 0
    assert "representation_axiom_strict" in out


def test_rep_dual_and_coadjoint(capsys):
    assert run(capsys, "rep", "dual", CURB, ADJ)[0] == 0
    assert run(capsys, "rep", "coadjoint", SHP)[0] == 0


# -- construct ----------------------------------------------------------------


def test_construct_cur(capsys):
    code, out, _ = run(capsys, "construct", "cur", BOREL_G, "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["report"]["ok"] is True
    assert {b["name"] for b in blob["algebra"]["basis"]} == {"x", "y"}


def test_construct_twist_dsum_semidirect_dext(capsys):
    assert run(capsys, "construct", "twist", SHP, F2.replace(
        "double_scaling_operator", "double_scaling_operator"))[0] in (0, 1, 2)
    code, out, _ = run(capsys, "construct", "dsum", SHP, SHP, "--format", "json")
    assert code == 0
    assert len(json.loads(out)["algebra"]["basis"]) == 6
    code, out, _ = run(capsys, "construct", "semidirect", CURB, ADJ, "--format", "json")
    assert code == 0
    assert len(json.loads(out)["algebra"]["basis"]) == 4
    code, out, _ = run(capsys, "construct", "dext", CURB, F2, "--format", "json")
    # doubling is not a derivation of a nonabelian bracket: honest failure
    assert code == 1
    blob = json.loads(out)
    assert blob["report"]["meta"]["derivation_check"] is False


def test_construct_fromassoc(capsys):
    code, out, _ = run(capsys, "construct", "fromassoc", ASSOC, "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["report"]["ok"] is True
    assert "E11|E12" in blob["algebra"]["brackets"]


def test_construct_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "dsum", SHP, CURB, "--format", "json")
    assert code == 0
    algebra = json.loads(out)["algebra"]
    path = tmp_path / "sum.json"
    path.write_text(dump_json(algebra))
    code2, out2, _ = run(capsys, "check", str(path), "--format", "json")
    assert code2 == 0
    # parse -> serialize -> parse: emitted form is stable (elapsed aside)
    code3, out3, _ = run(capsys, "construct", "dsum", SHP, CURB, "--format", "json")
    first, second = json.loads(out), json.loads(out3)
    first["report"].pop("elapsed")
    second["report"].pop("elapsed")
    assert first == second


# -- cohomology -----------------------------------------------------------------


def test_cohomology_differentials(capsys):
    code, out, _ = run(capsys, "cohomology", "d1", SHP, GAMMA, "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["cochain"]["arity"] == 2
    [entry] = blob["cochain"]["values"]["o1|o2"]
    assert entry["target"] == "z"
    assert entry["poly"] == [{"coeff": "-1", "vars": {}}]


def test_cohomology_d2d1_and_cocycle(capsys):
    code, out, _ = run(capsys, "cohomology", "d2d1", SHP, GAMMA, "--seed", "5")
    assert code == 0
    assert "schedule: uniform" in out
    code, out, _ = run(capsys, "cohomology", "cocycle", SHP, PSI)
    assert code == 0


def test_cohomology_printed_schedule_flag(capsys):
    code, out, _ = run(
        capsys, "cohomology", "d2d1", SHP, GAMMA, "--alpha-power-schedule", "printed"
    )
    assert "schedule: printed" in out


def test_cohomology_ds(capsys):
    code, out, _ = run(
        capsys, "cohomology", "ds", SHP, GAMMA, "--s", "-1", "--n", "1",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["cochain"]["arity"] == 2


# -- deform ----------------------------------------------------------------------


def test_deform_apply_and_conditions(capsys):
    code, out, _ = run(capsys, "deform", "apply", SHP, PSI, "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["report"]["ok"] is True
    assert "t" in blob["algebra"]["scalar_params"]
    assert run(capsys, "deform", "conditions", SHP, PSI)[0] == 0


def test_deform_nijenhuis_and_trivial(capsys):
    assert run(capsys, "deform", "nijenhuis", CURB, F2)[0] == 0
    code, out, _ = run(capsys, "deform", "trivial", CURB, F2, "--seed", "2")
    assert code == 0
    assert "oracle_agrees: True" in out


# -- derivations -------------------------------------------------------------------


def test_derivations_solve_flags(capsys):
    code, out, _ = run(
        capsys, "derivations", "solve", CURB, "--k", "0", "--parity", "0",
        "--lmax", "1", "--dmax", "1", "--format", "json",
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["dimension"] == 3
    assert len(blob["candidates"]) == 3
    code, out, _ = run(
        capsys, "derivations", "solve", CURB, "--degree-bounds", "1,1",
        "--format", "json",
    )
    assert json.loads(out)["dimension"] == 3


def test_derivations_check_and_commutator(capsys, tmp_path):
    code, out, _ = run(
        capsys, "derivations", "solve", CURB, "--lmax", "1", "--dmax", "1",
        "--k", "1", "--format", "json",
    )
    cand = json.loads(out)["candidates"][0]
    path = tmp_path / "cand.json"
    path.write_text(dump_json(cand))
    assert run(capsys, "derivations", "check", CURB, str(path))[0] == 0
    code, out, _ = run(
        capsys, "derivations", "commutator", CURB, str(path), str(path),
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["candidate"]["k"] == 2
