"""
Utilities for eigencone: logging and result serialization.
"""
from .logging import EigenconeLogger, log_numerics
from .serialization import dump_json, to_jsonable, write_csv

__all__ = ['EigenconeLogger', 'log_numerics', 'dump_json', 'to_jsonable', 'write_csv']
