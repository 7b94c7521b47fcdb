"""Real-axis special functions and a numerical verifier for harmonic-mean inequalities."""

__version__ = "0.1.0"
