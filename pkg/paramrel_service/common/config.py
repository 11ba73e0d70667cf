"""run configuration: flat `key = value` files validated against a JSON-Schema

defaults live in the schema; a resolved config is written back as sorted
`key = value` lines ending in a `# hash:` comment, so a run directory's
config file can be parsed again as-is

>>> cfg = parse_config(None, ["schedule.T=4"])
>>> cfg["schedule.T"], cfg["model.latent_dim"]
(4, 8)
"""

from __future__ import annotations

import dataclasses
import hashlib
import logging
import re
import types
from collections import abc
from pathlib import Path

import jsonschema

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.model import ModelConfig
from paramrel_toolkit.objective import (
    LossWeights,
    MmdKernel,
)
from paramrel_toolkit.schedules import AccuracySchedule


__all__ = (
    "RUN_CONFIG_SCHEMA",
    "RunConfig",
    "parse_config",
    "parse_lines",
)

_logger = logging.getLogger(__name__)

# `#` opens a comment at the start of a line or after whitespace, so values may hold it
_COMMENT = re.compile(r"(?:^|\s)#")

SYNTHETIC_DATA_DIM = 64
_SYNTHETIC_KINDS = types.MappingProxyType(
    {
        "blobs_continuous": DataKind.CONTINUOUS.value,
        "shapes_binary": DataKind.DISCRETE.value,
    }
)


def _integer(default: int, minimum: int | None = None, **extra) -> dict:
    _schema = {"type": "integer", "default": default, **extra}
    if minimum is not None:
        _schema["minimum"] = minimum
    return _schema


def _number(default: float, **extra) -> dict:
    return {"type": "number", "default": default, **extra}


def _choice(default: str, *choices: str) -> dict:
    return {"type": "string", "default": default, "enum": list(choices)}


RUN_CONFIG_SCHEMA = types.MappingProxyType(
    {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "seed": _integer(0, minimum=0),
            "data.source": _choice("blobs_continuous", "blobs_continuous", "shapes_binary", "idx"),
            "data.n": _integer(2000, minimum=200),
            "data.idx_path": {"type": "string", "default": ""},
            "data.idx_labels_path": {"type": "string", "default": ""},
            "schedule.kind": _choice("continuous", "continuous", "discrete"),
            "schedule.T": _integer(10, minimum=1),
            "schedule.sigma1": _number(0.02, exclusiveMinimum=0, exclusiveMaximum=1),
            "schedule.beta1": _number(4.0, exclusiveMinimum=0),
            "model.latent_dim": _integer(8, minimum=1),
            "model.hidden": _integer(64, minimum=1),
            "model.blocks": _integer(2, minimum=1),
            "model.groups": _integer(4, minimum=1),
            "model.time_embed_dim": _integer(16, minimum=2, multipleOf=2),
            "model.progressive_encoder": {"type": "boolean", "default": True},
            "loss.mi_weight": _number(0.95, minimum=0, exclusiveMaximum=1),
            "loss.tc_weight": _number(0.1, exclusiveMinimum=0),
            "loss.mmd_bandwidth": _number(0.0, minimum=0),
            "loss.mmd_kernel": _choice("rbf", *(_k.value for _k in MmdKernel)),
            "loss.n_mc": _integer(1, minimum=1),
            "train.epochs": _integer(5, minimum=1),
            "train.batch_size": _integer(64, minimum=2),
            "train.max_steps": _integer(5000, minimum=0),
            "train.lr": _number(1e-4, exclusiveMinimum=0),
            "train.adam_beta1": _number(0.9, minimum=0, exclusiveMaximum=1),
            "train.adam_beta2": _number(0.999, minimum=0, exclusiveMaximum=1),
            "train.adam_eps": _number(1e-8, exclusiveMinimum=0),
            "sample.n": _integer(16, minimum=1),
            "sample.z_mode": _choice("prior", "prior", "encoder", "fixed"),
            "sample.z_index": _integer(0, minimum=0),
            "probe.t_probe": _integer(-1, minimum=-1),
            "probe.folds": _integer(5, minimum=2),
            "heatmap.x0": _number(0.5),
            "heatmap.bins": _integer(200, minimum=2),
            "heatmap.trajectories": _integer(10, minimum=0),
        },
    }
)
_PROPERTIES = RUN_CONFIG_SCHEMA["properties"]
_VALIDATOR = jsonschema.Draft202012Validator(dict(RUN_CONFIG_SCHEMA))


@dataclasses.dataclass(frozen=True)
class RunConfig(abc.Mapping):
    """a fully resolved run configuration (every schema key present)"""

    values: types.MappingProxyType

    def __getitem__(self, key: str):
        return self.values[key]

    def __iter__(self):
        return iter(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def data_kind(self) -> DataKind:
        return DataKind(self["schedule.kind"])

    @property
    def is_synthetic(self) -> bool:
        return self["data.source"] in _SYNTHETIC_KINDS

    @property
    def config_hash(self) -> str:
        return hashlib.sha256("".join(self.lines()).encode()).hexdigest()[:16]

    def lines(self) -> list[str]:
        return [f"{_key} = {_format(self[_key])}\n" for _key in self]

    def render(self) -> str:
        return "".join(self.lines()) + f"# hash: {self.config_hash}\n"

    def write(self, path: Path) -> None:
        Path(path).write_text(self.render(), encoding="utf-8")

    def with_overrides(self, overrides: abc.Iterable[str]) -> RunConfig:
        return _resolve({**self.values, **_parse_assignments(overrides, "override")})

    ###
    # builders for the toolkit's config types

    def schedule(self) -> AccuracySchedule:
        return AccuracySchedule(
            T=self["schedule.T"],
            kind=self.data_kind,
            sigma1=self["schedule.sigma1"],
            beta1=self["schedule.beta1"],
        )

    def model_config(self, data_dim: int, num_classes: int = 2) -> ModelConfig:
        return ModelConfig(
            kind=self.data_kind,
            data_dim=data_dim,
            latent_dim=self["model.latent_dim"],
            T=self["schedule.T"],
            num_classes=num_classes,
            hidden=self["model.hidden"],
            blocks=self["model.blocks"],
            groups=self["model.groups"],
            time_embed_dim=self["model.time_embed_dim"],
            progressive_encoder=self["model.progressive_encoder"],
        )

    def loss_weights(self) -> LossWeights:
        return LossWeights(
            mi_weight=self["loss.mi_weight"],
            tc_weight=self["loss.tc_weight"],
            T=self["schedule.T"],
        )

    @property
    def t_probe(self) -> int:
        _t = self["probe.t_probe"]
        return self["schedule.T"] // 2 if _t < 0 else _t


def parse_config(path: Path | None, overrides: abc.Iterable[str] = ()) -> RunConfig:
    """read `path` (when given), apply `KEY=VALUE` overrides, fill defaults, validate"""
    _values: dict = {}
    if path is not None:
        try:
            _text = Path(path).read_text(encoding="utf-8")
        except OSError as _error:
            raise exceptions.ConfigError("--config", f"cannot read {path}: {_error}") from _error
        _values.update(parse_lines(_text.splitlines()))
    _values.update(_parse_assignments(overrides, "override"))
    return _resolve(_values)


def parse_lines(lines: abc.Iterable[str]) -> dict:
    """`key = value` lines to typed values; blank lines and `#` comments skipped"""
    _values: dict = {}
    for _line_number, _line in enumerate(lines, start=1):
        _stripped = _COMMENT.split(_line, maxsplit=1)[0].strip()
        if not _stripped:
            continue
        _key, _value = _split_assignment(_stripped, f"line {_line_number}")
        if _key in _values:
            _logger.warning("config key %s given more than once; the last value wins", _key)
        _values[_key] = _coerce(_key, _value)
    return _values


###
# local helpers


def _parse_assignments(assignments: abc.Iterable[str], where: str) -> dict:
    _values = {}
    for _assignment in assignments:
        _key, _value = _split_assignment(_assignment.strip(), where)
        _values[_key] = _coerce(_key, _value)
    return _values


def _split_assignment(text: str, where: str) -> tuple[str, str]:
    _key, _sep, _value = text.partition("=")
    if not _sep:
        raise exceptions.ConfigError(where, f"expected key = value, got {text!r}")
    return _key.strip(), _value.strip()


def _coerce(key: str, raw: str):
    try:
        _type = _PROPERTIES[key]["type"]
    except KeyError:
        raise exceptions.ConfigError(key, "unknown key")
    try:
        if _type == "integer":
            return int(raw)
        if _type == "number":
            return float(raw)
    except ValueError:
        raise exceptions.ConfigError(key, f"cannot parse {raw!r} as {_type}")
    if _type == "boolean":
        _lowered = raw.lower()
        if _lowered in ("true", "yes", "1"):
            return True
        if _lowered in ("false", "no", "0"):
            return False
        raise exceptions.ConfigError(key, f"cannot parse {raw!r} as boolean")
    return raw


def _resolve(explicit: abc.Mapping) -> RunConfig:
    _values = {_key: _prop["default"] for _key, _prop in _PROPERTIES.items()}
    _values.update(explicit)
    _source = _values["data.source"]
    if _source in _SYNTHETIC_KINDS:
        _kind = _SYNTHETIC_KINDS[_source]
        if "schedule.kind" in explicit and explicit["schedule.kind"] != _kind:
            raise exceptions.ConfigError(
                "schedule.kind", f"{_source} data is {_kind} (got {explicit['schedule.kind']})"
            )
        _values["schedule.kind"] = _kind
    _error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(_values))
    if _error is not None:
        _key = _error.path[0] if _error.path else "config"
        raise exceptions.ConfigError(str(_key), _error.message)
    if _source in _SYNTHETIC_KINDS and _values["model.latent_dim"] > SYNTHETIC_DATA_DIM // 2:
        raise exceptions.ConfigError(
            "model.latent_dim",
            f"must be at most {SYNTHETIC_DATA_DIM // 2} for {SYNTHETIC_DATA_DIM}-dimensional data",
        )
    if _values["probe.t_probe"] > _values["schedule.T"]:
        raise exceptions.ConfigError("probe.t_probe", "must not exceed schedule.T")
    if _source == "idx" and not _values["data.idx_path"]:
        raise exceptions.ConfigError("data.idx_path", "required when data.source = idx")
    return RunConfig(types.MappingProxyType(_values))


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value) if isinstance(value, float) else str(value)
