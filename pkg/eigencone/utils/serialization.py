"""
JSON and CSV output for eigencone results.

JSON floats use Python's shortest round-trip repr, which reproduces every double exactly.
CSV goes through pandas with 17 significant digits.
"""
import json
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, TextIO, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..config import get_config


def to_jsonable(value: Any) -> Any:
    """Convert models, arrays and numpy scalars into plain JSON types."""
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump(mode="python"))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    return value


def dump_json(
    value: Any,
    path: Optional[Union[str, Path]] = None,
    stream: Optional[TextIO] = None,
) -> str:
    """
    Serialize value as indented JSON to path, or to stream (standard output by default).

    Returns:
        str: The JSON text
    """
    text = json.dumps(to_jsonable(value), indent=2)
    if path is not None:
        with open(path, "w") as f:
            f.write(text + "\n")
    else:
        out = stream if stream is not None else sys.stdout
        out.write(text + "\n")
    return text


def write_csv(
    frame: pd.DataFrame,
    path: Optional[Union[str, Path]] = None,
    stream: Optional[TextIO] = None,
) -> None:
    """Write frame without its index to path, or to stream (standard output by default)."""
    float_format = get_config()["output"]["csv_float_format"]
    target = path if path is not None else (stream if stream is not None else sys.stdout)
    frame.to_csv(target, index=False, float_format=float_format)
