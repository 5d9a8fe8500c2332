"""Figure rendering for polscat CSV outputs."""

from .io import SchemaError, Table, read_table
from .recipes import RECIPES, FigureRecipe
from .render import RenderResult, render

__version__ = "0.1.0"

__all__ = [
    "RECIPES",
    "FigureRecipe",
    "RenderResult",
    "SchemaError",
    "Table",
    "read_table",
    "render",
    "__version__",
]
