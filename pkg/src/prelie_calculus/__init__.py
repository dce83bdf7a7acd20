"""Exact verification and construction engine for pre-Lie algebras,
Lie bialgebras, the noncommutative differential calculi they induce on
deformed enveloping algebras, and the quantum metrics / classical
curvatures of the 2D calculus families."""

__version__ = "0.1.0"
