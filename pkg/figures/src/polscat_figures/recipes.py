"""Figure recipes: which columns to plot and how to dress the axes.

Recipes only select and label documented CSV columns; nothing is
recomputed. ``marker_source`` says where vertical markers come from:
``"pole"`` reads the pole flag column, ``"meta:<key>"`` reads a single
position from the file metadata.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    x: str
    y: str
    xlabel: str
    ylabel: str
    title: str
    xscale: str = "linear"
    marker_source: str | None = None
    zero_line: bool = False

    def required_columns(self) -> tuple:
        cols = [self.x, self.y]
        if self.marker_source == "pole":
            cols.append("pole")
        return tuple(cols)


def _theta_recipe(figure_id: str, title: str) -> FigureRecipe:
    return FigureRecipe(
        figure_id=figure_id,
        x="theta",
        y="re_f",
        xlabel="dipole tilt angle θ (degrees)",
        ylabel="scattering amplitude f",
        title=title,
        marker_source="pole",
        zero_line=True,
    )


RECIPES = {
    "fig2": FigureRecipe(
        figure_id="fig2",
        x="k",
        y="abs_f",
        xlabel="wave number k (1/Å)",
        ylabel="|f|",
        title="Vacancy scattering amplitude vs wave number",
        xscale="log",
        marker_source="pole",
    ),
    "fig3": FigureRecipe(
        figure_id="fig3",
        x="detuning",
        y="abs_f",
        xlabel="cavity detuning δ₀ (eV)",
        ylabel="|f|",
        title="Polariton scattering off a vacancy vs detuning",
        marker_source="pole",
    ),
    "fig5": FigureRecipe(
        figure_id="fig5",
        x="detuning",
        y="abs_f",
        xlabel="cavity detuning δ₀ (eV)",
        ylabel="|f|",
        title="Polariton scattering off a single-atom site vs detuning",
        marker_source="pole",
    ),
    "fig7": _theta_recipe("fig7", "Tilted-site amplitude, J̄ = 1e-4 eV"),
    "fig8": _theta_recipe("fig8", "Tilted-site amplitude, J̄ = 5e-4 eV"),
    "fig9": _theta_recipe("fig9", "Tilted-site amplitude, J̄ = 1e-3 eV"),
    "fig10": _theta_recipe("fig10", "Tilted-site amplitude, J̄ = 5e-3 eV"),
    "ring": FigureRecipe(
        figure_id="ring",
        x="k",
        y="intensity",
        xlabel="|k'| (1/Å)",
        ylabel="scattered power",
        title="Elastic ring in reciprocal space",
        marker_source="meta:k_peak",
    ),
}
