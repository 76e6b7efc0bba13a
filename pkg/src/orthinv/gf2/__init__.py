from ._kernels import USING_NUMBA
from .matrix import GF2Matrix, nwords, pack_columns, unpack_columns

__all__ = ["GF2Matrix", "USING_NUMBA", "nwords", "pack_columns", "unpack_columns"]
