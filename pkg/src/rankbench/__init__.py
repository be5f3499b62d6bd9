"""rankbench: a workbench for rank-metric code encryption with a
lambda-dimensional secret coefficient subspace, its Frobenius-sumspace
distinguisher, and full key-recovery attacks for lambda = 2 and 3."""

__version__ = "0.1.0"
