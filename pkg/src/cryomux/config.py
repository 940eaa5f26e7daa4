"""Run configuration: JSON loading, schema validation and object construction.

Validation errors are reported against the source text as
``file:line:col: message`` so a user can jump straight to the offending key.
A missing key is anchored at the object that should contain it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from json.decoder import scanstring
from pathlib import Path
from typing import Optional

import jsonschema
import numpy as np

from .campaign import CampaignConfig, DriftModel, FluxSweepConfig
from .device import TransmonParams, table_qubit
from .mux import MuxModel, load_spectrum_csv
from .noise import NoiseParams
from .planner import BudgetConfig

__all__ = [
    "ConfigError",
    "RunConfig",
    "QubitSpec",
    "load_config",
    "parse_config",
    "config_schema",
    "load_schema",
    "default_config",
    "example_config_path",
    "locate",
]

_WS = " \t\r\n"


class ConfigError(ValueError):
    """Invalid configuration; ``str()`` is a line-anchored message."""

    def __init__(self, message, source="<config>", line=None, col=None):
        self.source, self.line, self.col, self.detail = source, line, col, message
        where = f"{source}:{line}:{col}" if line is not None else str(source)
        super().__init__(f"{where}: {message}")


def load_schema(name):
    """A bundled JSON schema by file stem, e.g. ``"config"`` or ``"summary"``."""
    text = resources.files("cryomux").joinpath(f"data/schemas/{name}.schema.json").read_text()
    return json.loads(text)


def config_schema():
    return load_schema("config")


def example_config_path():
    """Path of the bundled example configuration."""
    return Path(str(resources.files("cryomux").joinpath("data/example_config.json")))


def _skip(text, i):
    while i < len(text) and text[i] in _WS:
        i += 1
    return i


def _value_end(text, i):
    # end index of the JSON value starting at i
    return json.JSONDecoder().raw_decode(text, i)[1]


def locate(text, path):
    """Character offset of the value at ``path`` (keys and indices) in JSON ``text``.

    Walks as deep as the path exists and returns the offset of the deepest
    value reached, so a missing key resolves to its parent object.
    """
    i = _skip(text, 0)
    for step in path:
        if i >= len(text):
            break
        if text[i] == "{" and isinstance(step, str):
            j = _skip(text, i + 1)
            found = None
            while j < len(text) and text[j] == '"':
                key, j = scanstring(text, j + 1)
                j = _skip(text, j)
                j = _skip(text, j + 1)  # past ':'
                if key == step:
                    found = j
                    break
                j = _skip(text, _value_end(text, j))
                if j < len(text) and text[j] == ",":
                    j = _skip(text, j + 1)
            if found is None:
                return i
            i = found
        elif text[i] == "[" and isinstance(step, int):
            j = _skip(text, i + 1)
            for _ in range(step):
                j = _skip(text, _value_end(text, j))
                if j >= len(text) or text[j] != ",":
                    return i
                j = _skip(text, j + 1)
            i = j
        else:
            break
    return i


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _key_pos(text, container_pos, key):
    """Offset of ``"key"`` inside the object at ``container_pos``, else the object."""
    j = _skip(text, container_pos + 1)
    while j < len(text) and text[j] == '"':
        start = j
        name, j = scanstring(text, j + 1)
        if name == key:
            return start
        j = _skip(text, j)
        j = _skip(text, j + 1)
        j = _skip(text, _value_end(text, j))
        if j < len(text) and text[j] == ",":
            j = _skip(text, j + 1)
    return container_pos


def _describe(err):
    where = "/".join(str(p) for p in err.absolute_path) or "top level"
    if err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance]
        return f"missing required key {missing[0]!r} in {where}", None
    if err.validator == "additionalProperties":
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        return f"unknown key {extra[0]!r} in {where}", extra[0]
    if err.validator == "anyOf" and err.absolute_path and err.absolute_path[0] == "qubits":
        return f"{where}: give either 'table' or all of 'f_q_hz', 'f_r_hz', 't1_s'", None
    return f"{where}: {err.message}", None


def _raise_schema_error(text, data, source):
    validator = jsonschema.Draft202012Validator(config_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if not errors:
        return
    err = errors[0]
    message, key = _describe(err)
    pos = locate(text, list(err.absolute_path))
    if key is not None:
        pos = _key_pos(text, pos, key)
    line, col = _line_col(text, pos)
    raise ConfigError(message, source, line, col)


@dataclass(frozen=True)
class QubitSpec:
    """A qubit to simulate and the photon number the mux adds to its resonator."""

    params: TransmonParams
    n_add: float = 0.0


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration with every section resolved to model objects."""

    qubits: tuple
    mux: MuxModel = field(default_factory=MuxModel)
    noise: NoiseParams = field(default_factory=lambda: NoiseParams.from_sqrt(2.8e-6, 15e-9))
    campaign: dict = field(default_factory=dict)
    seed: int = 0
    sweep: Optional[dict] = None
    budget: BudgetConfig = field(default_factory=BudgetConfig)
    rf: dict = field(default_factory=lambda: {"fmin_hz": 1e9, "fmax_hz": 8e9, "n_points": 71})
    out_dir: str = "cryomux_out"
    out_format: str = "csv"
    raw: dict = field(default_factory=dict)

    def campaign_config(self, spec):
        c = self.campaign
        drift = DriftModel(
            correlation_time=c.get("drift_correlation_time_s", 3600.0),
            amplitude=c.get("drift_amplitude", 0.10),
        )
        return CampaignConfig(
            qubit=spec.params,
            n_add=spec.n_add,
            duration=c.get("duration_s", 12 * 3600.0),
            repetition_period=c.get("repetition_period_s", 600.0),
            noise_sigma=c.get("noise_sigma", 0.01),
            n_points=c.get("n_points", 51),
            span=c.get("span", 3.0),
            spacing=c.get("spacing", "log"),
            echo_fit=c.get("echo_fit", "exponential"),
            drift=drift,
        )

    def sweep_config(self):
        s = self.sweep or {}
        return FluxSweepConfig(
            f_max=s.get("f_max_hz", 5e9),
            t1_sweet=s.get("t1_sweet_s", 50e-6),
            tphi_sweet=s.get("tphi_sweet_s", 100e-6),
            noise=self.noise,
            mux=self.mux,
            vdd=s.get("vdd", 0.55),
            heating=s.get("heating", True),
            noise_sigma=s.get("noise_sigma", 0.0),
        )

    def sweep_grid(self):
        s = self.sweep or {}
        return np.linspace(s.get("phi_min", -0.2), s.get("phi_max", 0.2), s.get("n_points", 21))


def _qubit(entry, index, text, source):
    base = None
    if "table" in entry:
        try:
            base = table_qubit(entry["table"])
        except KeyError as exc:
            line, col = _line_col(text, locate(text, ["qubits", index, "table"]))
            raise ConfigError(exc.args[0], source, line, col) from None
    overrides = {
        "f_q": entry.get("f_q_hz"),
        "f_r": entry.get("f_r_hz"),
        "kappa_over_2pi": entry.get("kappa_over_2pi_hz"),
        "chi_over_2pi": entry.get("chi_over_2pi_hz"),
        "t1": entry.get("t1_s"),
        "t2e": entry.get("t2e_s"),
        "tphi": entry.get("tphi_s"),
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    label = entry.get("label")
    try:
        if base is None:
            params = TransmonParams(label=label or f"qubit_{index}", **overrides)
        else:
            params = replace(base, **overrides, **({"label": label} if label else {}))
        spec = QubitSpec(params, entry.get("n_add", 0.0))
        if spec.n_add > 0 and not params.has_readout_params:
            raise ValueError("n_add needs kappa_over_2pi_hz and chi_over_2pi_hz")
    except ValueError as exc:
        line, col = _line_col(text, locate(text, ["qubits", index]))
        raise ConfigError(str(exc), source, line, col) from None
    return spec


def _mux(section, base_dir, text, source):
    kw = {k: v for k, v in section.items() if not k.endswith("_csv")}
    for key, attr in (("insertion_loss_csv", "il_table"), ("isolation_csv", "iso_table")):
        if key in section:
            path = Path(section[key])
            if not path.is_absolute():
                path = base_dir / path
            if not path.is_file():
                line, col = _line_col(text, locate(text, ["mux", key]))
                raise ConfigError(f"referenced file not found: {path}", source, line, col)
            kw[attr] = load_spectrum_csv(path)
    try:
        return MuxModel(**kw)
    except ValueError as exc:
        line, col = _line_col(text, locate(text, ["mux"]))
        raise ConfigError(str(exc), source, line, col) from None


def parse_config(text, source="<config>", base_dir="."):
    """Validate JSON ``text`` and build a :class:`RunConfig`.

    Raises
    ------
    ConfigError
        Malformed JSON, schema violations, missing referenced files or
        parameter values rejected by the models.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", source, exc.lineno, exc.colno) from None
    _raise_schema_error(text, data, source)
    base_dir = Path(base_dir)

    qubits = tuple(_qubit(q, i, text, source) for i, q in enumerate(data["qubits"]))
    mux = _mux(data.get("mux", {}), base_dir, text, source)
    n = data.get("noise", {})
    noise = NoiseParams.from_sqrt(n.get("sqrt_a_uphi0", 2.8) * 1e-6, n.get("sqrt_b_nphi0_per_rthz", 15.0) * 1e-9)
    campaign = dict(data.get("campaign", {}))
    seed = campaign.pop("seed", 0)
    sweep = data.get("sweep")
    if sweep is not None and not sweep.get("enabled", True):
        sweep = None
    if sweep is not None and sweep.get("phi_min", -0.2) >= sweep.get("phi_max", 0.2):
        line, col = _line_col(text, locate(text, ["sweep"]))
        raise ConfigError("sweep: phi_min must be below phi_max", source, line, col)
    b = data.get("budget", {})
    try:
        budget = BudgetConfig(
            cooling_power=b.get("cooling_power_w", 20e-6),
            per_mux_static=b.get("per_mux_static_w", 200e-12),
            ports_per_mux=b.get("ports_per_mux", 4),
            switching_rate=b.get("switching_rate_hz", 0.0),
            flux_bias_current=b.get("flux_bias_current_a", 0.0),
            margin=b.get("margin", 0.0),
            vdd=b.get("vdd", 0.55),
        )
    except ValueError as exc:
        line, col = _line_col(text, locate(text, ["budget"]))
        raise ConfigError(str(exc), source, line, col) from None
    rf = {"fmin_hz": 1e9, "fmax_hz": 8e9, "n_points": 71, **data.get("rf", {})}
    out = data.get("outputs", {})
    return RunConfig(
        qubits=qubits,
        mux=mux,
        noise=noise,
        campaign=campaign,
        seed=seed,
        sweep=sweep,
        budget=budget,
        rf=rf,
        out_dir=out.get("directory", "cryomux_out"),
        out_format=out.get("format", "csv"),
        raw=data,
    )


def load_config(path):
    """Read and validate a configuration file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    return parse_config(text, str(path), path.parent)


def default_config():
    """Configuration used when a command runs without ``--config``: all model defaults."""
    return parse_config(json.dumps({"qubits": [{"table": 2, "n_add": 0.022}]}), "<defaults>")
