"""JSON scenario configs for the command line tools.

Schema (all keys other than ``system``, ``state`` and ``window`` are optional)::

    {
      "system":    {"levels": [0, 1], "hbar": 1.0, "group_tol": 1e-9},
      "state":     {"matrix": [[0.2, 0.25], [0.25, 0.8]]}
                 | {"amplitudes": [0.4472135955, 0.894427191]}
                 | {"white_noise": {"amplitudes": [...], "alpha": 0.5 or [0, 0.5, 1]}},
      "window":    {"x": 1.2} | {"T": [0, 1, 2]} | {"x": {"start": 0, "stop": 10, "num": 501}},
      "embedding": {"enabled": true, "N": [64, 128, 256]},
      "verify":    {"random_instances": 200},
      "output":    {"path": "sweep.csv", "format": "csv"}
    }

Complex entries are written as a number or a ``[re, im]`` pair.  ``x`` is
only accepted for a two-level system with a nonzero splitting, where
``x = (E_1 - E_0) T / (2 hbar)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .indicators import white_noise_state
from .qstate import DensityMatrix, PureState, ValidationError, validate_density
from .spectra import DEFAULT_GROUP_TOL, EnergySpectrum


class ConfigError(ValueError):
    """Config file is malformed or describes an invalid state."""


@dataclass(frozen=True, eq=False)
class StateCase:
    """One initial state to run, with the white-noise parameters that produced it."""

    sigma: DensityMatrix
    pure: PureState | None = None
    alpha: float | None = None


@dataclass(eq=False)
class ScenarioConfig:
    spec: EnergySpectrum
    cases: list[StateCase]
    window_var: str  # "x" or "T"
    window_values: list[float]
    embedding_enabled: bool = False
    embedding_N: list[int] = field(default_factory=list)
    random_instances: int = 0
    output_path: str | None = None
    output_format: str = "csv"

    @property
    def epsilon(self) -> float | None:
        """Qubit splitting ``E_1 - E_0``, or None when x is not defined."""
        if self.spec.dim != 2:
            return None
        eps = float(self.spec.levels[1] - self.spec.levels[0])
        return eps if abs(eps) > self.spec.group_tol else None

    @property
    def T_values(self) -> list[float]:
        if self.window_var == "T":
            return list(self.window_values)
        return [2.0 * self.spec.hbar * x / abs(self.epsilon) for x in self.window_values]


def _complex(v, where: str) -> complex:
    if isinstance(v, bool):
        raise ConfigError(f"{where}: expected a number, got {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(
            isinstance(c, (int, float)) and not isinstance(c, bool) for c in v):
        return complex(v[0], v[1])
    raise ConfigError(f"{where}: expected a number or [re, im], got {v!r}")


def _vector(v, where: str) -> np.ndarray:
    if not isinstance(v, list) or not v:
        raise ConfigError(f"{where}: expected a non-empty list")
    return np.array([_complex(c, f"{where}[{i}]") for i, c in enumerate(v)])


def _grid(v, where: str) -> list[float]:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        values = [float(v)]
    elif isinstance(v, list):
        if not v or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v):
            raise ConfigError(f"{where}: expected a non-empty list of numbers")
        values = [float(c) for c in v]
    elif isinstance(v, dict):
        try:
            start, stop, num = float(v["start"]), float(v["stop"]), int(v["num"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{where}: range needs numeric start, stop, num") from exc
        if num < 1:
            raise ConfigError(f"{where}: range must have num >= 1")
        values = np.linspace(start, stop, num).tolist()
    else:
        raise ConfigError(f"{where}: expected a number, list or range")
    if any(not np.isfinite(c) or c < 0 for c in values):
        raise ConfigError(f"{where}: values must be finite and >= 0")
    return sorted(values)


def _pure(v, where: str) -> PureState:
    try:
        return PureState(_vector(v, where))
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _cases(state: dict, spec: EnergySpectrum) -> list[StateCase]:
    if not isinstance(state, dict):
        raise ConfigError("state: expected an object")
    kinds = [k for k in ("matrix", "amplitudes", "white_noise") if k in state]
    if len(kinds) != 1:
        raise ConfigError("state: give exactly one of matrix, amplitudes, white_noise")
    kind = kinds[0]
    if kind == "matrix":
        rows = state["matrix"]
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise ConfigError("state.matrix: expected a list of rows")
        vecs = [_vector(r, f"state.matrix[{i}]") for i, r in enumerate(rows)]
        if any(v.size != len(vecs) for v in vecs):
            raise ConfigError("state.matrix: expected a square matrix")
        m = np.array(vecs)
        if m.shape[0] != m.shape[1]:
            raise ConfigError("state.matrix: expected a square matrix")
        report = validate_density(m)
        if not report.valid:
            raise ConfigError(f"state.matrix: not a valid density matrix ({report.describe()})")
        cases = [StateCase(DensityMatrix(m))]
    elif kind == "amplitudes":
        psi = _pure(state["amplitudes"], "state.amplitudes")
        cases = [StateCase(DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj())), psi, 1.0)]
    else:
        wn = state["white_noise"]
        if not isinstance(wn, dict) or "amplitudes" not in wn or "alpha" not in wn:
            raise ConfigError("state.white_noise: needs amplitudes and alpha")
        psi = _pure(wn["amplitudes"], "state.white_noise.amplitudes")
        alphas = wn["alpha"] if isinstance(wn["alpha"], list) else [wn["alpha"]]
        cases = []
        for a in alphas:
            if isinstance(a, bool) or not isinstance(a, (int, float)) or not 0 <= a <= 1:
                raise ConfigError(f"state.white_noise.alpha: {a!r} not in [0, 1]")
            cases.append(StateCase(white_noise_state(psi, float(a)), psi, float(a)))
    for c in cases:
        if c.sigma.dim != spec.dim:
            raise ConfigError(f"state dimension {c.sigma.dim} != number of levels {spec.dim}")
    return cases


def parse_config(data: dict) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    for key in ("system", "state", "window"):
        if key not in data:
            raise ConfigError(f"missing required section {key!r}")
    system = data["system"]
    if not isinstance(system, dict) or "levels" not in system:
        raise ConfigError("system: needs levels")
    try:
        spec = EnergySpectrum(
            [float(e) for e in system["levels"]],
            float(system.get("hbar", 1.0)),
            float(system.get("group_tol", DEFAULT_GROUP_TOL)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"system: {exc}") from exc
    try:
        cases = _cases(data["state"], spec)
    except ValidationError as exc:
        raise ConfigError(f"state: {exc}") from exc

    window = data["window"]
    if not isinstance(window, dict) or len([k for k in ("x", "T") if k in window]) != 1:
        raise ConfigError("window: give exactly one of x, T")
    var = "x" if "x" in window else "T"
    values = _grid(window[var], f"window.{var}")

    cfg = ScenarioConfig(spec, cases, var, values)
    if var == "x" and cfg.epsilon is None:
        raise ConfigError("window.x requires a two-level system with distinct levels; use T")

    emb = data.get("embedding", {})
    if not isinstance(emb, dict):
        raise ConfigError("embedding: expected an object")
    cfg.embedding_enabled = bool(emb.get("enabled", False))
    if cfg.embedding_enabled:
        ns = emb.get("N", [])
        if not isinstance(ns, list) or not ns or not all(
                isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in ns):
            raise ConfigError("embedding.N: expected a non-empty list of positive integers")
        cfg.embedding_N = sorted(ns)

    ver = data.get("verify", {})
    if not isinstance(ver, dict):
        raise ConfigError("verify: expected an object")
    n_rand = ver.get("random_instances", 0)
    if isinstance(n_rand, bool) or not isinstance(n_rand, int) or n_rand < 0:
        raise ConfigError("verify.random_instances: expected a nonnegative integer")
    cfg.random_instances = n_rand

    out = data.get("output", {})
    if not isinstance(out, dict):
        raise ConfigError("output: expected an object")
    cfg.output_path = out.get("path")
    cfg.output_format = out.get("format", "csv")
    if cfg.output_format != "csv":
        raise ConfigError(f"output.format: only csv is supported, got {cfg.output_format!r}")
    return cfg


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    return parse_config(data)
