import json
import logging
import logging.handlers
import os
import platform
import sys
from typing import Any, Iterable, List, Optional, Sequence
import warnings

from mixstab.constants import FLOAT_DIGITS, LOGDIR, LOGDIR_ENV, THREADS_ENV
from mixstab.errors import ParameterError
from mixstab.version import MIXSTAB_VERSION

handler = None


def build_logger(logger_name: str, logger_filename: Optional[str] = None) -> logging.Logger:
    global handler

    formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    # Set the format of root handlers; records go to stderr so stdout stays data-only
    if logging.getLogger().handlers is None or len(logging.getLogger().handlers) == 0:
        if sys.version_info[1] >= 9:
            # This is for windows
            logging.basicConfig(level=logging.WARNING, stream=sys.stderr, encoding="utf-8")
        else:
            if platform.system() == "Windows":
                warnings.warn(
                    "If you are running on Windows, "
                    "we recommend you use Python >= 3.9 for UTF-8 encoding."
                )
            logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    logging.getLogger().handlers[0].setFormatter(formatter)

    logger = logging.getLogger(logger_name)
    logger.setLevel(logging.DEBUG)

    # Add a file handler for all loggers
    if handler is None and logger_filename is not None:
        logdir = os.environ.get(LOGDIR_ENV, LOGDIR)
        os.makedirs(logdir, exist_ok=True)
        filename = os.path.join(logdir, logger_filename)
        handler = logging.handlers.TimedRotatingFileHandler(
            filename, when="D", utc=True, encoding="utf-8"
        )
        handler.setFormatter(formatter)

        for name, item in logging.root.manager.loggerDict.items():
            if isinstance(item, logging.Logger) and name.startswith("mixstab"):
                item.addHandler(handler)
        logger.addHandler(handler)

    return logger


def resolve_threads(flag: Optional[int] = None) -> int:
    """Parallelism degree: env var, then flag, then machine parallelism."""
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ParameterError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    if flag is not None:
        return max(1, int(flag))
    return os.cpu_count() or 1


def format_float(x: float) -> str:
    return format(float(x), f".{FLOAT_DIGITS}g")


def format_value(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float)):
        return format_float(x)
    return str(x)


def header_line(config: Any) -> str:
    """The comment line heading every output file."""
    resolved = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return f"# mixstab {MIXSTAB_VERSION} config={resolved}"


def render_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]], config: Any) -> str:
    lines: List[str] = [header_line(config), ",".join(columns)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def _round_floats(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(format_float(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def render_json(payload: Any, config: Any) -> str:
    body = json.dumps(_round_floats(payload), sort_keys=True, indent=2, allow_nan=True)
    return header_line(config) + "\n" + body + "\n"


def emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
