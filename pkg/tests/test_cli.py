"""Command line behavior: parsing, exit codes, and output stability."""

import json

import pytest

from relhom.cli import main, parse_allowed, parse_class, parse_module, parse_ring
from relhom.modules import INTEGERS, ModuleObject, RingSpec
from relhom.precover import AllowedSet


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_ring():
    assert parse_ring("Z") == INTEGERS
    assert parse_ring("Z/4") == RingSpec.modular(4)
    assert parse_ring("4") == RingSpec.modular(4)
    with pytest.raises(ValueError):
        parse_ring("Z/1")
    with pytest.raises(ValueError):
        parse_ring("field")


def test_parse_module():
    R4 = RingSpec.modular(4)
    assert parse_module("[4,2]", R4) == ModuleObject(R4, (4, 2))
    assert parse_module("0", R4) == ModuleObject.zero(R4)
    assert parse_module("[]", R4) == ModuleObject.zero(R4)
    assert parse_module("rank1+[2]", INTEGERS) == ModuleObject(INTEGERS, (2,), 1)
    assert parse_module("rank2", INTEGERS) == ModuleObject.free(2)
    with pytest.raises(ValueError):
        parse_module("rank1", R4)
    with pytest.raises(ValueError):
        parse_module("[x]", R4)


def test_parse_allowed():
    assert parse_allowed("{0,2+}") == AllowedSet(2, frozenset({0}))
    assert parse_allowed("{0+}") == AllowedSet.full()
    with pytest.raises(ValueError):
        parse_allowed("{0,2}")
    with pytest.raises(ValueError):
        parse_allowed("0,2+")


def test_parse_class():
    R4 = RingSpec.modular(4)
    family, ring = parse_class("add([2])", R4)
    assert str(family) == "add([2])" and ring == R4
    family, ring = parse_class("torsionZ", None)
    assert ring == INTEGERS
    with pytest.raises(ValueError):
        parse_class("torsionZ", R4)
    family, _ = parse_class("constrained support=[2] allowed[2]={0,2+}", R4)
    assert str(family) == "constrained support=[2] allowed[2]={0,2+}"
    with pytest.raises(ValueError):
        parse_class("weird(stuff)", R4)


def test_check_command_and_expectations(capsys):
    base = [
        "check",
        "R",
        "--ring",
        "Z/4",
        "--class",
        "constrained support=[2] allowed[2]={0,2+}",
        "--module",
        "[2]",
    ]
    code, out, _ = run(capsys, *base, "--n", "0")
    assert code == 0
    assert "No" in out
    assert run(capsys, *base, "--n", "0", "--expect", "no")[0] == 0
    assert run(capsys, *base, "--n", "0", "--expect", "yes")[0] == 1


def test_strict_unknown_exit(capsys):
    argv = [
        "check",
        "R",
        "--ring",
        "Z/4",
        "--class",
        "constrained support=[2] allowed[2]={0,2+}",
        "--module",
        "[2]",
        "--n",
        "1",
    ]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "Unknown" in out
    assert run(capsys, *argv, "--strict")[0] == 3


def test_invalid_inputs_exit_two(capsys):
    code, _, err = run(capsys, "resolve", "--ring", "Z/1", "--class", "add([2])", "--module", "[2]")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "suite", "no-such-suite")
    assert code == 2 and "unknown suite" in err
    code, _, err = run(capsys, "reproduce", "no-such-example")
    assert code == 2
    code, _, err = run(
        capsys, "ext", "--ring", "Z/4", "--class", "add([2])", "--module", "[2]"
    )
    assert code == 2 and "coeff" in err


def test_resolve_records_roundtrip(capsys):
    code, out, _ = run(
        capsys,
        "resolve",
        "--ring",
        "Z/4",
        "--class",
        "add([4])",
        "--module",
        "[2]",
        "--length",
        "2",
        "--format",
        "records",
    )
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    payload = next(rec for rec in lines if rec.get("record") == "resolution")
    assert payload["verified"] == "yes"
    assert payload["terms"] == ["[4]", "[4]", "[4]"]
    for line in out.strip().splitlines():
        assert line == json.dumps(json.loads(line), sort_keys=True)


def test_ext_command_output(capsys):
    code, out, _ = run(
        capsys,
        "ext",
        "--ring",
        "Z/4",
        "--class",
        "add([4])",
        "--module",
        "[2]",
        "--coeff",
        "[2]",
        "--n",
        "1",
    )
    assert code == 0
    assert "Z/2" in out
    code, out, _ = run(
        capsys,
        "ext",
        "--ring",
        "Z",
        "--class",
        "add(rank1)",
        "--module",
        "[6]",
        "--coeff",
        "rank1",
        "--n",
        "1",
    )
    assert code == 0
    assert "Z/3 + Z/2" in out


def test_schanuel_command(capsys):
    code, out, _ = run(
        capsys,
        "schanuel",
        "--ring",
        "Z/4",
        "--class",
        "add([4])",
        "--module",
        "[2]",
        "--n",
        "2",
    )
    assert code == 0
    assert "[2]" in out


def test_suite_and_reproduce(capsys):
    code, out, _ = run(capsys, "suite", "lemma-2.5", "--bound", "2", "--format", "records")
    assert code == 0
    last = json.loads(out.strip().splitlines()[-1])
    assert last["passed"] is True and last["ident"] == "lemma-2.5"
    code, out, _ = run(capsys, "reproduce", "example-2.7")
    assert code == 0
    assert "[pass]" in out


def test_list_commands(capsys):
    code, out, _ = run(capsys, "list", "suites")
    assert code == 0 and "lemma-2.5" in out and "dimension-shift" in out
    code, out, _ = run(capsys, "list", "examples")
    assert code == 0 and "prop-2.9" in out and "example-2.7" in out


def test_seed_self_check(capsys):
    code, out, _ = run(capsys, "reproduce", "example-2.7", "--seed", "7")
    assert code == 0
    assert "self-check" in out and "25 trials" in out


def test_output_is_byte_stable(capsys):
    argv = ["suite", "lemma-2.8", "--bound", "2", "--format", "records"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_config_file_handling(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text('{"max_total": 2, "max_level": 1}')
    code, out, _ = run(capsys, "suite", "thm-3.4", "--config", str(good))
    assert code == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "suite", "thm-3.4", "--config", str(bad))[0] == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"no_such_knob": 3}')
    assert run(capsys, "suite", "thm-3.4", "--config", str(unknown))[0] == 2
    assert run(capsys, "suite", "thm-3.4", "--config", str(tmp_path / "absent.json"))[0] == 2
