"""mackeycalc - exact Mackey and Tambara functor computations over e, C2 and K4."""

__version__ = "0.1.0"
