"""Artifact writers and the command-line interface."""

import json
import math

import numpy as np
import pytest

from homoflow import cli
from homoflow.closedform import Profile, landau_profile
from homoflow.errors import GridTouchesAxis, SpecMismatch
from homoflow.params import FlowParams
from homoflow.render import (
    RenderFormat,
    RenderKind,
    RenderSpec,
    psi_contours,
    read_csv,
    render,
    stream_function,
    streamline_polylines,
    tangency_defect,
    write_csv,
    write_json,
)


def _linear_profile():
    """U(y) = y, whose stream function is exactly -x3."""
    yg = np.linspace(-0.999, 0.999, 201)
    return Profile(
        y_grid=yg,
        u_values=yg.copy(),
        domain=(-1.0, 1.0),
        reaches_minus1=True,
        reaches_plus1=True,
        params=FlowParams(1.0, 1.5, 1.5, -1.5),
        evaluator=lambda y: np.asarray(y, dtype=float) + 0.0,
    )


def test_stream_function_closed_form():
    prof = _linear_profile()
    x1 = np.linspace(0.1, 2.0, 41)
    x3 = np.linspace(-1.5, 1.5, 43)
    fld = stream_function(prof, x1, x3)
    _, zz = np.meshgrid(x1, x3)
    assert np.max(np.abs(fld.psi + zz)) <= 1e-12
    # its contours are horizontal lines
    for lv, line in psi_contours(fld, levels=[-0.5, 0.5]):
        assert np.max(np.abs(line[:, 1] + lv)) <= 1e-9


def test_grid_must_avoid_axis_and_origin():
    prof = _linear_profile()
    with pytest.raises(GridTouchesAxis):
        stream_function(prof, np.linspace(0.0, 1.0, 11), np.array([0.5]))
    with pytest.raises(GridTouchesAxis):
        stream_function(prof, np.array([5e-4]), np.array([1e-4]))


def test_tangency_defect_of_exact_level_sets():
    prof = landau_profile(1.0, 1.0)
    polys = streamline_polylines(prof, samples=192)
    assert tangency_defect(prof, polys) <= 1e-4
    kinds = {cls for cls, _ in polys}
    assert kinds == {"streamline", "axis", "sphere-trace"}


def test_csv_round_trip(tmp_path):
    path = tmp_path / "t.csv"
    x = np.array([1.0, math.pi, 1e-7, -3.25e11])
    y = np.array([0.0, -1.0, 2.0 / 3.0, 1e300])
    write_csv(path, ["x", "y"], [x, y])
    header, data = read_csv(path)
    assert header == ["x", "y"]
    # values survive to the printed 12-digit precision
    assert np.allclose(data[:, 0], x, rtol=1e-11, atol=0.0)
    assert np.allclose(data[:, 1], y, rtol=1e-11, atol=0.0)
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")


def test_json_writer_orders_keys(tmp_path):
    path = tmp_path / "t.json"
    write_json(path, {"b": [1.0, 2.0], "a": {"z": 1, "y": 2.0}})
    text = path.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert text.index('"y"') < text.index('"z"')
    assert json.loads(text) == {"b": [1.0, 2.0], "a": {"z": 1, "y": 2.0}}


def test_svg_structure_and_determinism(tmp_path):
    prof = landau_profile(1.0, 1.0)
    spec1 = RenderSpec(
        RenderKind.STREAMLINES,
        str(tmp_path / "a.svg"),
        RenderFormat.SVG,
        view={"samples": 64},
    )
    spec2 = RenderSpec(
        RenderKind.STREAMLINES,
        str(tmp_path / "b.svg"),
        RenderFormat.SVG,
        view={"samples": 64},
    )
    render(spec1, prof)
    render(spec2, prof)
    a = (tmp_path / "a.svg").read_bytes()
    assert a == (tmp_path / "b.svg").read_bytes()
    text = a.decode()
    assert 'width="800" height="800"' in text
    for cls in ("streamline", "axis", "sphere-trace"):
        assert f'class="{cls}"' in text
    assert "<polyline" in text and "<path" not in text


def test_render_spec_validation(tmp_path):
    with pytest.raises(SpecMismatch):
        RenderSpec(
            RenderKind.STREAMLINES,
            "x.svg",
            RenderFormat.SVG,
            view={"samples": 4},
        )
    with pytest.raises(SpecMismatch):
        RenderSpec(
            RenderKind.STREAMLINES,
            "x.svg",
            RenderFormat.SVG,
            view={"levels": [1.0, 0.0]},
        )
    with pytest.raises(SpecMismatch):
        render(
            RenderSpec(
                RenderKind.PROFILE_FAMILY,
                str(tmp_path / "x.csv"),
                RenderFormat.CSV,
            ),
            "not a profile list",
        )
    with pytest.raises(SpecMismatch):
        render(
            RenderSpec(
                RenderKind.STREAMLINES,
                str(tmp_path / "x.json"),
                RenderFormat.JSON,
            ),
            landau_profile(1.0, 1.0),
        )


def test_profile_family_render(tmp_path):
    leaves = [landau_profile(1.0, g) for g in (-1.0, 0.5, 1.0)]
    path = tmp_path / "fam.csv"
    render(
        RenderSpec(
            RenderKind.PROFILE_FAMILY,
            str(path),
            RenderFormat.CSV,
            view={"samples": 32},
        ),
        leaves,
    )
    header, data = read_csv(path)
    assert header == ["y", "U_1", "U_2", "U_3"]
    assert data.shape == (32, 4)
    assert np.allclose(data[:, 2], leaves[1].u(data[:, 0]), rtol=1e-10)


# ------------------------------------------------------------------- CLI


def test_cli_classify(capsys):
    rc = cli.main(["classify", "--nu", "1", "--c", "0,0,0.5"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "case: CASE1" in out
    assert "tau-set: (0, 4, -4, 0)" in out
    assert "critical c3: -4" in out
    assert "gamma interval: [-2.18844, 2.18844]" in out


def test_cli_classify_rejects_inadmissible(capsys):
    rc = cli.main(["classify", "--nu", "1", "--c", "0,0,-12"])
    assert rc == 2
    assert "case: CASE6" in capsys.readouterr().out


def test_cli_usage_errors(capsys):
    assert cli.main(["classify", "--nu", "1"]) == 2  # missing --c
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()


def test_cli_solve_writes_profile(tmp_path, capsys):
    out_csv = tmp_path / "prof.csv"
    rc = cli.main(
        [
            "solve",
            "--nu",
            "1",
            "--c",
            "0,0,-12",
            "--gamma",
            "0",
            "--out",
            str(out_csv),
        ]
    )
    assert rc == 0
    text = capsys.readouterr().out
    assert "class: A3" in text
    assert "blow-up ordinates:" in text
    header, data = read_csv(out_csv)
    assert header == ["y", "U"]
    assert len(data) == 601


def test_cli_config_file_with_explicit_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nu = 1\nc = 0,0,0.5  # coefficients\n\ntol = 1e-4\n")
    rc = cli.main(["classify", "--config", str(cfg)])
    assert rc == 0
    out1 = capsys.readouterr().out
    assert "case: CASE1" in out1
    # explicit flags beat config values
    rc = cli.main(["classify", "--config", str(cfg), "--c", "0,0,-12"])
    assert rc == 2
    assert "case: CASE6" in capsys.readouterr().out


def test_cli_liouville_and_field_export(tmp_path, capsys):
    out = tmp_path / "field.csv"
    rc = cli.main(
        [
            "liouville",
            "--kind",
            "exponential",
            "--b",
            "0.3",
            "--samples",
            "24",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    text = capsys.readouterr().out
    assert "equation residual:" in text
    assert "meridian variance:" in text
    header, data = read_csv(out)
    assert header == ["alpha", "theta", "u_phi", "u_r", "u_theta"]
    assert len(data) == 24 * 24


def test_cli_streamlines_prints_tangency(tmp_path, capsys):
    out = tmp_path / "s.svg"
    rc = cli.main(
        [
            "streamlines",
            "--landau",
            "1.0",
            "--samples",
            "64",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    text = capsys.readouterr().out
    assert "tangency defect:" in text
    defect = float(text.split("tangency defect:")[1].split()[0])
    assert defect <= 1e-4
    assert out.exists()
