import inspect
import warnings

import numpy as np


def _short_repr(value) -> str:
    if isinstance(value, np.ndarray):
        return np.array2string(value, precision=6, separator=", ")
    return repr(value)


class BaseMixin:
    """Base mixin for capcover configurable classes."""

    def __repr__(self):
        """Get default representation of capcover object built from ``__init__`` parameters."""
        args_str_representation = ""
        init_args = inspect.signature(self.__init__).parameters
        for arg, param in init_args.items():
            if param.kind in (param.VAR_POSITIONAL, param.VAR_KEYWORD):
                continue
            try:
                value = self.__dict__[arg]
            except KeyError as e:
                value = None
                warnings.warn(f"You haven't set all parameters inside class __init__ method: {e}")
            args_str_representation += f"{arg} = {_short_repr(value)}, "
        return f"{self.__class__.__name__}({args_str_representation})"
