"""Semi-analytic series solutions of the viscous Burgers' equation."""

__version__ = "0.1.0"
