"""Render one recipe from one CSV into SVG + PNG.

Rendering is a pure function of the input file: a fixed style, a fixed
SVG hash salt and no embedded dates, so re-running on the same CSV gives
identical bytes. Pole-flagged rows carry NaN amplitudes, which break the
curve, and their x positions are drawn as dashed vertical asymptotes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .io import Table, read_table  # noqa: E402
from .recipes import RECIPES, FigureRecipe  # noqa: E402


@dataclass(frozen=True)
class RenderResult:
    figure_id: str
    outputs: tuple
    markers: tuple
    points: int


def marker_positions(recipe: FigureRecipe, table: Table) -> tuple:
    src = recipe.marker_source
    if src is None:
        return ()
    if src == "pole":
        xs = table.floats(recipe.x)
        flags = table.column("pole")
        return tuple(float(x) for x, flag in zip(xs, flags) if flag == "1")
    if src.startswith("meta:"):
        return (table.meta_float(src[5:]),)
    raise ValueError(f"unknown marker source {src!r}")


def render(figure_id: str, csv_path: str, outdir: str) -> RenderResult:
    if figure_id not in RECIPES:
        raise ValueError(f"unknown recipe {figure_id!r}; have {', '.join(RECIPES)}")
    recipe = RECIPES[figure_id]
    table = read_table(csv_path)
    table.require(*recipe.required_columns())
    x = table.floats(recipe.x)
    y = table.floats(recipe.y)
    markers = marker_positions(recipe, table)

    os.makedirs(outdir, exist_ok=True)
    with plt.rc_context({"svg.hashsalt": figure_id}):
        fig, ax = plt.subplots(figsize=(6.0, 4.0), constrained_layout=True)
        try:
            ax.plot(x, y, color="tab:blue", lw=1.5)
            if recipe.zero_line:
                ax.axhline(0.0, color="0.6", lw=0.8)
            for pos in markers:
                ax.axvline(pos, color="tab:red", ls="--", lw=1.0)
            ax.set_xscale(recipe.xscale)
            ax.set_xlabel(recipe.xlabel)
            ax.set_ylabel(recipe.ylabel)
            ax.set_title(recipe.title)
            svg = os.path.join(outdir, f"{figure_id}.svg")
            png = os.path.join(outdir, f"{figure_id}.png")
            fig.savefig(svg, metadata={"Date": None})
            fig.savefig(png, dpi=150)
        finally:
            plt.close(fig)
    return RenderResult(
        figure_id=figure_id,
        outputs=(svg, png),
        markers=markers,
        points=len(table),
    )
