"""Run configuration: `key=value` files, command-line literals and their precedence."""

import logging
import re
from dataclasses import replace
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

from memsmatch.errors import BadValue, UsageError
from memsmatch.netlist import parse_value
from memsmatch.types.configuration_word import N_BITS
from memsmatch.types.coupler_mode import CouplerMode
from memsmatch.types.run_config import RunConfig
from memsmatch.types.varactor_model import VaractorModel

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")

_LOSS_KEYS = {"q_l", "q_c", "r_on", "c_off", "f_ref", "lossless"}
_RUN_KEYS = {"frequency", "mode", "varactor_model", "threads", "seed", "format", "output", "epsilon", "grid_n"}
CONFIG_KEYS = frozenset(_LOSS_KEYS | _RUN_KEYS)

_NUMBER = r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?(?:{_NUMBER}))(?:([+-])({_NUMBER})j)?$")
_BOOL_WORDS = {"1": True, "true": True, "yes": True, "on": True, "0": False, "false": False, "no": False, "off": False}


def parse_complex(text: str) -> complex:
    """
    Parse an impedance literal in `a+bj` / `a-bj` notation, or a plain real number.

    Forms such as `j`, `3j`, `50+j`, `50+-3j`, `50 + 3j` or `(50+3j)` are rejected.

    Examples:
        ```python
        parse_complex("25-40j")  # (25-40j)
        parse_complex("50")      # (50+0j)
        ```

    Raises:
        UsageError: If the text is not in one of the accepted forms.
    """
    match = _COMPLEX_RE.match(text.strip())
    if match is None:
        raise UsageError(f"malformed complex number {text!r}; expected a+bj or a-bj")
    real, sign, imag = match.groups()
    im = 0.0 if imag is None else float(imag) * (-1.0 if sign == "-" else 1.0)
    return complex(float(real), im)


def parse_frequency(text: str) -> float:
    """
    Parse a frequency with an engineering suffix and an optional `Hz` unit.

    Examples:
        ```python
        parse_frequency("620M")     # 620000000.0
        parse_frequency("620MHz")   # 620000000.0
        ```
    """
    stripped = text.strip()
    if stripped.lower().endswith("hz"):
        stripped = stripped[:-2]
    try:
        f = parse_value(stripped)
    except BadValue as e:
        raise UsageError(f"malformed frequency {text!r}") from e
    if f <= 0:
        raise UsageError(f"frequency must be positive, got {text!r}")
    return f


def parse_bits(text: str) -> list[int]:
    """
    Parse a bit selection such as `0-7`, `8,9,10` or `0-3,8`. An empty string selects no bits.

    Raises:
        UsageError: For malformed or reversed ranges and bits outside [0, 10].
    """
    bits: set[int] = set()
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            if "-" in part:
                lo, hi = (int(v) for v in part.split("-", 1))
                if lo > hi:
                    raise UsageError(f"reversed bit range {part!r} in {text!r}")
                bits.update(range(lo, hi + 1))
            else:
                bits.add(int(part))
        except ValueError as e:
            raise UsageError(f"malformed bit selection {text!r}") from e
    if any(not 0 <= b < N_BITS for b in bits):
        raise UsageError(f"bits must be in [0, {N_BITS - 1}], got {text!r}")
    return sorted(bits)


def parse_float_list(text: str) -> list[float]:
    """Comma-separated numbers with engineering suffixes, e.g. `10,30,100` or `10f,50f`."""
    try:
        return [parse_value(p.strip()) for p in text.split(",") if p.strip()]
    except BadValue as e:
        raise UsageError(f"malformed number list {text!r}") from e


def parse_bool(text: str) -> bool:
    try:
        return _BOOL_WORDS[text.strip().lower()]
    except KeyError as e:
        raise UsageError(f"malformed boolean {text!r}") from e


def load_config_file(path: Path) -> dict[str, str]:
    """
    Read `key=value` settings; blank lines and `#` comments are ignored.

    Raises:
        UsageError: If the file cannot be read, a line has no `=`, or a key is unknown.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read config file {path}: {e}") from e
    settings: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        settings[key] = value.strip()
    logger.debug("loaded %d settings from %s", len(settings), path)
    return settings


def _convert(key: str, value: str) -> Any:
    match key:
        case "frequency" | "f_ref":
            return parse_frequency(value)
        case "mode":
            return _enum(CouplerMode, value)
        case "varactor_model":
            return _enum(VaractorModel, value)
        case "lossless":
            return parse_bool(value)
        case "threads" | "seed" | "grid_n":
            try:
                return int(value)
            except ValueError as e:
                raise UsageError(f"{key} must be an integer, got {value!r}") from e
        case "format":
            if value not in FORMATS:
                raise UsageError(f"format must be one of {', '.join(FORMATS)}, got {value!r}")
            return value
        case "output":
            return Path(value)
        case _:
            try:
                return parse_value(value)
            except BadValue as e:
                raise UsageError(f"{key}: {e}") from e


def _enum[E: Enum](cls: type[E], value: str) -> E:
    try:
        return cls(value)
    except ValueError as e:
        choices = ", ".join(m.value for m in cls)
        raise UsageError(f"expected one of {choices}, got {value!r}") from e


def apply_settings(config: RunConfig, settings: Mapping[str, Any]) -> RunConfig:
    """
    Return a copy of `config` with `settings` applied on top.

    String values are converted as in a config file; already-typed values are used as is.
    None values are skipped, so unset command-line flags leave the lower layer untouched.

    Raises:
        UsageError: For unknown keys or invalid values.
    """
    run_changes: dict[str, Any] = {}
    loss_changes: dict[str, Any] = {}
    for key, value in settings.items():
        if value is None:
            continue
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown setting {key!r}")
        converted = _convert(key, value) if isinstance(value, str) else value
        (loss_changes if key in _LOSS_KEYS else run_changes)[key] = converted

    try:
        loss = config.loss.with_values(**loss_changes) if loss_changes else config.loss
    except BadValue as e:
        raise UsageError(str(e)) from e
    updated = replace(config, loss=loss, **run_changes)
    if updated.frequency <= 0:
        raise UsageError(f"frequency must be positive, got {updated.frequency}")
    if updated.threads is not None and updated.threads < 1:
        raise UsageError(f"threads must be at least 1, got {updated.threads}")
    if updated.epsilon <= 0:
        raise UsageError(f"epsilon must be positive, got {updated.epsilon}")
    if updated.grid_n < 16:
        raise UsageError(f"grid_n must be at least 16, got {updated.grid_n}")
    return updated


def resolve_config(config_path: Path | None, overrides: Mapping[str, Any]) -> RunConfig:
    """
    Defaults, then the config file (if any), then `overrides`.

    Examples:
        ```python
        config = resolve_config(Path("run.cfg"), {"frequency": "700M", "q_l": None})
        ```
    """
    config = RunConfig()
    if config_path is not None:
        config = apply_settings(config, load_config_file(config_path))
    return apply_settings(config, overrides)
