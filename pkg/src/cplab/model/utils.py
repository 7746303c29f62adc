from __future__ import annotations

import os
import sys
from enum import Enum
from fractions import Fraction
from importlib.resources import files

import numpy as np
import tomli
from tqdm import tqdm


# seed streams


def seed_from_env(default_seed=0):
    value = os.environ.get("CPLAB_SEED")
    if not value:
        return default_seed
    try:
        return int(value, 0)
    except ValueError as e:
        raise ValidationError(f"CPLAB_SEED must be an integer, got {value!r}") from e


def make_rng(seed: int, *stream_index: int) -> np.random.Generator:
    """
    Child stream for (seed, stream_index...).
    SeedSequence hashes the seed and the spawn key together, so distinct indices give independent
    streams and equal inputs replay the same draws.
    """
    if seed < 0 or any(i < 0 for i in stream_index):
        raise ValidationError("seed and stream indices must be nonnegative")
    seq = np.random.SeedSequence(entropy=seed, spawn_key=tuple(stream_index))
    return np.random.Generator(np.random.PCG64(seq))


# config


def load_config(path=None) -> dict:
    """Bundled defaults, overlaid with the TOML file at path (nested tables merge one level deep)."""
    with open(files("cplab").joinpath("configs/default.toml"), "rb") as f:
        config = tomli.load(f)
    if path:
        try:
            with open(path, "rb") as f:
                user = tomli.load(f)
        except OSError as e:
            raise ValidationError(f"cannot read config {path}: {e.strerror or e}") from e
        except tomli.TOMLDecodeError as e:
            raise ValidationError(f"bad TOML in {path}: {e}") from e
        for key, value in user.items():
            if isinstance(value, dict) and isinstance(config.get(key), dict):
                config[key] = {**config[key], **value}
            else:
                config[key] = value
    return config


def parse_sizes(value) -> list[int]:
    """[100, 200], "100,200", "7" or "100:3000:100" (stop included)."""
    if isinstance(value, int):
        return [value]
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    text = str(value).strip()
    try:
        if ":" in text:
            start, stop, step = (int(v) for v in text.split(":"))
            return list(range(start, stop + 1, step))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ValidationError(f"bad size list {value!r}") from e


# helpers


def exists(v):
    return v is not None


def default(v, d):
    return v if exists(v) else d


def log(msg, quiet=False):
    # stdout may carry json/csv, keep status lines on stderr
    if not quiet:
        tqdm.write(str(msg), file=sys.stderr)


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"not a rational number: {text!r}") from e


def parse_point_pairs(text: str) -> list[tuple[int, int]]:
    """Parse "2-11,4-7" into [(2, 11), (4, 7)]. Empty text gives no pairs."""
    pairs = []
    for chunk in (text or "").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            a, b = (int(p) for p in chunk.split("-"))
        except ValueError as e:
            raise ValidationError(f"bad pair {chunk!r}, expected a-b") from e
        pairs.append((a, b))
    return pairs


# errors


class ValidationError(ValueError):
    pass


class PairRejection(str, Enum):
    RANGE = "range"
    DUPLICATE_ENDPOINT = "duplicate_endpoint"
    CROSSING = "crossing"


class InvalidPairError(ValidationError):
    def __init__(self, reason: PairRejection, detail: str):
        super().__init__(f"{reason.value}: {detail}")
        self.reason = reason
        self.detail = detail


class NotAMatchingError(ValidationError):
    pass


class UnbalancedWordError(ValidationError):
    pass


class CapExceededError(ValidationError):
    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"{what} = {value} exceeds the cap of {cap}")
        self.value = value
        self.cap = cap


def check_cap(what, value, cap, hard_cap):
    if cap > hard_cap:
        raise CapExceededError(f"configured cap for {what}", cap, hard_cap)
    if value > cap:
        raise CapExceededError(what, value, cap)
