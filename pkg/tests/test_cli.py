import json
import subprocess
import sys

import pytest

from rateregion.cli import EXIT_INPUT, EXIT_NOT_CERTIFIED, EXIT_OK, main, parse_axes
from rateregion import presets
from rateregion.io import (
    InputError,
    channel_to_dict,
    dump_json,
    load_channel,
    load_spec,
    spec_to_dict,
)


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_bounds_stdout(capsys):
    rc, out, _ = run(["bounds", "--preset", "sw-mac", "--formulation", "han"], capsys)
    assert rc == EXIT_OK
    assert out.rstrip().endswith("formulation=han bounds=7")


def test_slice_square_trace(capsys):
    rc, out, _ = run(["slice", "--preset", "classical-mac", "--axes", "1|1,2|1",
                      "--grid", "3", "--samples", "20"], capsys)
    assert rc == EXIT_OK
    assert out.splitlines() == ["theta,R_a,R_b", "0.000000,1.000000,0.000000",
                                "45.000000,1.000000,1.000000", "90.000000,0.000000,1.000000"]


def test_checkvsi_exit_codes(capsys):
    assert run(["checkvsi", "--preset", "ifc2cm", "--samples", "20"], capsys)[0] == EXIT_OK
    rc, out, _ = run(["checkvsi", "--preset", "ifc2cm", "--channel-preset", "ifc-noise2",
                      "--samples", "20"], capsys)
    assert rc == EXIT_NOT_CERTIFIED and "FAILED" in out


def test_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("RATEREGION_SEED", "7")
    _, out, _ = run(["compare", "--preset", "sw-mac", "--samples", "5"], capsys)
    assert "seed=7" in out
    _, out, _ = run(["compare", "--preset", "sw-mac", "--samples", "5", "--seed", "9"], capsys)
    assert "seed=9" in out
    monkeypatch.setenv("RATEREGION_SEED", "x")
    assert run(["compare", "--preset", "sw-mac", "--samples", "5"], capsys)[0] == EXIT_INPUT


@pytest.mark.parametrize("argv", [
    ["bounds"],
    ["compare", "--preset", "ifc2cm"],
    ["slice", "--preset", "sw-mac", "--axes", "1|1,9|9"],
    ["slice", "--preset", "sw-mac", "--axes", "1|1,1|1"],
    ["bounds", "--spec", "/nonexistent.json"],
    ["nope"],
])
def test_input_errors(argv, capsys):
    rc, _, err = run(argv, capsys)
    assert rc == EXIT_INPUT


def test_json_files_roundtrip(tmp_path, capsys):
    spec_path, ch_path = tmp_path / "spec.json", tmp_path / "ch.json"
    dump_json(spec_to_dict(presets.spec_preset("sw-mac")), spec_path)
    dump_json(channel_to_dict(presets.channel_preset("mac-xor")), ch_path)
    assert load_spec(spec_path).messages == presets.spec_preset("sw-mac").messages
    assert load_channel(ch_path).transition.shape == (2, 2, 2)
    a = run(["compare", "--spec", str(spec_path), "--channel", str(ch_path),
             "--samples", "5"], capsys)
    b = run(["compare", "--preset", "sw-mac", "--samples", "5"], capsys)
    assert a[0] == b[0] == EXIT_OK
    assert a[1].splitlines()[1:] == b[1].splitlines()[1:]


def test_bad_json_names_field(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"n_tx": 2, "n_rx": 1, "messages": [{"tx": [1], "rx": []}]}))
    with pytest.raises(InputError, match="message 0: empty rx_set"):
        load_spec(p)
    p.write_text(json.dumps({"n_tx": 1, "n_rx": 1, "input_alphabets": [2],
                             "output_alphabets": [2], "transition": [0.5, 0.5, 0.9, 0.2]}))
    with pytest.raises(InputError, match="row x=\\(1,\\)"):
        load_channel(p)
    p.write_text("{")
    with pytest.raises(InputError):
        load_spec(p)


def test_parse_axes_forms():
    labels = presets.spec_preset("sw-mac").messages
    assert parse_axes("{1|1},{2|1}", labels) == (0, 2)
    assert parse_axes("R[{1,2|1}],0", labels) == (1, 0)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "rateregion", "bounds", "--preset", "single"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "R'[{1|1}] <= I(Y1; X1)" in r.stdout
