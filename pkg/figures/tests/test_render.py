"""Rendering: outputs exist, markers land where the data says, bytes repeat."""

import os

import pytest

from polscat_figures import RECIPES, SchemaError, read_table, render
from polscat_figures.render import marker_positions

GOLDEN = os.path.join(os.path.dirname(__file__), "..", "golden")


def golden(name):
    return os.path.join(GOLDEN, name)


@pytest.mark.parametrize("figure_id", sorted(RECIPES))
def test_render_golden(figure_id, tmp_path):
    result = render(figure_id, golden(f"{figure_id}.csv"), str(tmp_path))
    svg, png = result.outputs
    assert svg.endswith(f"{figure_id}.svg")
    assert png.endswith(f"{figure_id}.png")
    for path in result.outputs:
        assert os.path.getsize(path) > 1000
    assert result.points > 100


# Resonance angles solved by the generator; the renderer must pass them through.
POLE_MARKERS = {
    "fig7": (),
    "fig8": (60.27317957425089, 80.23522454131424),
    "fig9": (57.44205820637607, 64.81774985726499),
    "fig10": (55.26884725506226, 56.60950733734666),
}


@pytest.mark.parametrize("figure_id", sorted(POLE_MARKERS))
def test_pole_markers(figure_id, tmp_path):
    result = render(figure_id, golden(f"{figure_id}.csv"), str(tmp_path))
    expected = POLE_MARKERS[figure_id]
    assert len(result.markers) == len(expected)
    for got, want in zip(result.markers, expected):
        assert got == pytest.approx(want, rel=1e-9)


def test_ring_marker_is_meta_peak(tmp_path):
    table = read_table(golden("ring.csv"))
    result = render("ring", golden("ring.csv"), str(tmp_path))
    assert result.markers == (table.meta_float("k_peak"),)


def test_smooth_sweeps_have_no_markers(tmp_path):
    for figure_id in ("fig2", "fig3", "fig5"):
        result = render(figure_id, golden(f"{figure_id}.csv"), str(tmp_path))
        assert result.markers == ()


def test_render_is_deterministic(tmp_path):
    first = render("fig9", golden("fig9.csv"), str(tmp_path / "a"))
    second = render("fig9", golden("fig9.csv"), str(tmp_path / "b"))
    for pa, pb in zip(first.outputs, second.outputs):
        with open(pa, "rb") as fa, open(pb, "rb") as fb:
            assert fa.read() == fb.read()


def test_svg_carries_no_timestamp(tmp_path):
    result = render("fig2", golden("fig2.csv"), str(tmp_path))
    with open(result.outputs[0], "rb") as fh:
        assert b"dc:date" not in fh.read()


def test_two_point_csv_renders(tmp_path):
    p = tmp_path / "tiny.csv"
    p.write_text("# k_peak = 1.5\nk,intensity\n1.0,0.1\n2.0,0.4\n")
    result = render("ring", str(p), str(tmp_path / "out"))
    assert result.points == 2
    assert result.markers == (1.5,)
    for path in result.outputs:
        assert os.path.getsize(path) > 0


def test_unknown_recipe_rejected(tmp_path):
    with pytest.raises(ValueError, match="unknown recipe"):
        render("fig99", golden("fig2.csv"), str(tmp_path))


def test_wrong_csv_names_missing_column(tmp_path):
    with pytest.raises(SchemaError, match="abs_f"):
        render("fig2", golden("ring.csv"), str(tmp_path))


def test_marker_positions_requires_known_source():
    table = read_table(golden("ring.csv"))
    recipe = RECIPES["ring"]
    bad = type(recipe)(
        figure_id="x", x="k", y="intensity", xlabel="", ylabel="", title="",
        marker_source="orbit",
    )
    with pytest.raises(ValueError, match="marker source"):
        marker_positions(bad, table)
