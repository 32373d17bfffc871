"""Twisted trigonometric boundary integrable models: R, Lax and K matrices,
dressed reflection-equation solutions, q-Onsager generators, commuting
charges and the open-boundary McCoy-Wu chain, as dense complex matrices."""

__version__ = "0.1.0"
