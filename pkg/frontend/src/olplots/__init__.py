"""Figure rendering for olspice harness result files."""

from .figures import KINDS, FigureSpec, PlotError, build_figure, render

__all__ = ["KINDS", "FigureSpec", "PlotError", "build_figure", "render"]
