"""Figure regeneration from cvqkd CSV files: read-only, never recomputes physics."""

from .render import FIGURE_IDS, FigureSpec, SchemaError, render

__version__ = "0.1.0"
