"""Column-wise cell format standardization toolkit."""

__version__ = "0.1.0"
