"""Grid sweeps of the QFI over (initial angle, time) and their CSV form."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from ._backend import kernels
from .bath import BathSpec, qfi_bath, reduced_bloch_bath, sector_arrays
from .model import ModelParams
from .qfi import (
    EstimatedParameter,
    central_derivative,
    qfi_exact,
    qfi_finite_difference,
    qfi_from_bloch_array,
)
from .state import InitialAngles, evolve, prepare_initial, reduced_bloch

ANGLE_NAMES = ("theta1", "phi1", "theta2", "phi2")
PARAM_NAMES = ("omega0", "omega", "omega1", "g")
DERIVATIVE_METHODS = ("exact", "fd")
COLUMNS = ("eta_name", "theta1", "phi1", "theta2", "phi2", "t", "qfi", "sx", "sy", "sz", "bloch_norm")

DEFAULT_AXIS_GRIDS = {
    "theta1": (0.0, math.pi, 201),
    "theta2": (0.0, math.pi, 201),
    "phi1": (0.0, 2 * math.pi, 201),
    "phi2": (0.0, 2 * math.pi, 201),
}
DEFAULT_T_GRID = (0.0, 15.0, 601)
SPOT_CHECK_TOLERANCE = 1e-10


class InvariantViolation(RuntimeError):
    """A computed result contradicts an internal consistency check."""


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid bounds must be finite")
        if int(self.count) != self.count:
            raise ValueError(f"grid count must be an integer, got {self.count}")
        object.__setattr__(self, "count", int(self.count))
        # a single point is allowed only as the degenerate start == stop grid
        if self.count == 1:
            if self.start != self.stop:
                raise ValueError("a one-point grid needs start == stop")
        elif self.count < 2 or not self.start < self.stop:
            raise ValueError(
                f"grid needs count >= 2 and start < stop, got {self.start}:{self.stop}:{self.count}"
            )

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def __str__(self):
        return f"{self.start!r}:{self.stop!r}:{self.count}"


@dataclass(frozen=True)
class SweepConfig:
    params: ModelParams
    angles: InitialAngles
    eta: EstimatedParameter
    axis: str = "theta1"
    axis_grid: Grid = field(default_factory=lambda: Grid(*DEFAULT_AXIS_GRIDS["theta1"]))
    t_grid: Grid = field(default_factory=lambda: Grid(*DEFAULT_T_GRID))
    derivative_method: str = "exact"
    fd_step: float = 1e-4
    bath_n: int | None = None
    preset: str | None = None
    notes: tuple[str, ...] = ()
    output_path: str | None = None
    emit_plot_script: bool = False

    def __post_init__(self):
        if self.axis not in ANGLE_NAMES:
            raise ValueError(f"sweep axis must be one of {ANGLE_NAMES}, got {self.axis!r}")
        if self.derivative_method not in DERIVATIVE_METHODS:
            raise ValueError(f"derivative method must be exact or fd, got {self.derivative_method!r}")
        if self.derivative_method == "fd" and not self.fd_step > 0:
            raise ValueError(f"fd step must be positive, got {self.fd_step}")
        if self.t_grid.start < 0:
            raise ValueError("time grid must start at t >= 0")
        if self.bath_n is not None:
            BathSpec(self.bath_n, self.params.g)
            if self.axis in ("theta2", "phi2"):
                raise ValueError("bath sweeps cannot vary the single-spin angles")


DEFAULT_PARAMS = ModelParams(omega0=0.1, omega=0.1, omega1=0.1, g=0.5)
DEFAULT_ANGLES = InitialAngles(theta1=math.pi / 4, phi1=math.pi, theta2=math.pi, phi2=0.0)


def build_config(
    preset: str | None = None,
    overrides: dict[str, float] | None = None,
    eta=None,
    grids: dict[str, tuple[float, float, int]] | None = None,
    derivative_method: str = "exact",
    fd_step: float = 1e-4,
    bath_n: int | None = None,
    output_path: str | None = None,
    emit_plot_script: bool = False,
) -> SweepConfig:
    """Resolve a preset plus command-line style overrides into a SweepConfig.

    ``grids`` maps at most one angle name and ``t`` to (start, stop, count);
    the angle named there becomes the swept axis.
    """
    from .presets import get_preset

    overrides = dict(overrides or {})
    grids = dict(grids or {})
    if preset is not None:
        p = get_preset(preset)
        params, angles, default_eta, axis, notes = p.params, p.angles, p.eta, p.axis, p.notes
        if bath_n is None:
            bath_n = p.bath_n
    else:
        params, angles, default_eta, axis, notes = DEFAULT_PARAMS, DEFAULT_ANGLES, EstimatedParameter.WEIGHT, "theta1", ()
    unknown = set(overrides) - set(PARAM_NAMES) - set(ANGLE_NAMES)
    if unknown:
        raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    params = params.replace(**{k: v for k, v in overrides.items() if k in PARAM_NAMES})
    angle_axes = [k for k in grids if k != "t"]
    if len(angle_axes) > 1:
        raise ValueError(f"only one angle axis can be swept, got {angle_axes}")
    unknown = set(angle_axes) - set(ANGLE_NAMES)
    if unknown:
        raise ValueError(f"unknown grid axis {sorted(unknown)[0]!r}")
    if angle_axes:
        axis = angle_axes[0]
    if axis in overrides:
        raise ValueError(f"{axis} is the swept axis and cannot also be fixed")
    angles = angles.replace(**{k: v for k, v in overrides.items() if k in ANGLE_NAMES})
    axis_grid = Grid(*grids.get(axis, DEFAULT_AXIS_GRIDS[axis]))
    t_grid = Grid(*grids.get("t", DEFAULT_T_GRID))
    return SweepConfig(
        params=params,
        angles=angles,
        eta=EstimatedParameter.parse(eta) if eta is not None else default_eta,
        axis=axis,
        axis_grid=axis_grid,
        t_grid=t_grid,
        derivative_method=derivative_method,
        fd_step=fd_step,
        bath_n=bath_n,
        preset=preset,
        notes=tuple(notes),
        output_path=output_path,
        emit_plot_script=emit_plot_script,
    )


@dataclass
class SweepTable:
    config: SweepConfig
    axis_values: np.ndarray
    times: np.ndarray
    s: np.ndarray
    ds: np.ndarray
    qfi: np.ndarray

    def angles_at(self, k: int) -> InitialAngles:
        return self.config.angles.replace(**{self.config.axis: float(self.axis_values[k])})


def _central_inputs(config: SweepConfig, axis_values, eta_shift: float = 0.0):
    eta = config.eta
    q0, dq0, weights = [], [], []
    if config.bath_n is not None:
        deltas, bath_w = sector_arrays(BathSpec(config.bath_n, config.params.g), config.params)
    else:
        deltas = np.array([config.params.delta_minus, config.params.delta_plus])
    for v in axis_values:
        a = config.angles.replace(**{config.axis: float(v)})
        if eta_shift:
            a = a.replace(**{eta.value: getattr(a, eta.value) + eta_shift})
        q0.append([math.cos(a.theta1), math.sin(a.theta1) * np.exp(-1j * a.phi1)])
        dq0.append(central_derivative(a.theta1, a.phi1, eta))
        if config.bath_n is None:
            weights.append([math.cos(a.theta2) ** 2, math.sin(a.theta2) ** 2])
        else:
            weights.append(bath_w)
    return deltas, np.array(weights, dtype=float), np.array(q0, dtype=complex), np.array(dq0, dtype=complex)


def _bloch_grid(config: SweepConfig, axis_values, times, eta_shift=0.0, with_derivative=True):
    deltas, weights, q0, dq0 = _central_inputs(config, axis_values, eta_shift)
    p = config.params
    return kernels.mixture_sweep(
        deltas, weights, p.omega1, p.omega, True, q0, dq0, times, with_derivative
    )


def compute_sweep(config: SweepConfig) -> SweepTable:
    """Evaluate the Bloch vector and QFI on the full (axis, t) grid.

    The reduced central state is a mixture over the bath sectors: for the
    single spin qubit the sector weights are cos^2(theta2), sin^2(theta2),
    for an unpolarized bath they are binomial.
    """
    axis_values = config.axis_grid.values()
    times = config.t_grid.values()
    if config.derivative_method == "exact":
        s, ds = _bloch_grid(config, axis_values, times)
    else:
        s, _ = _bloch_grid(config, axis_values, times, with_derivative=False)
        h = config.fd_step

        def central(step):
            plus, _ = _bloch_grid(config, axis_values, times, step, with_derivative=False)
            minus, _ = _bloch_grid(config, axis_values, times, -step, with_derivative=False)
            return (plus - minus) / (2 * step)

        d_h = central(h)
        ds = (4 * central(h / 2) - d_h) / 3
    qfi = qfi_from_bloch_array(s, ds)
    return SweepTable(config, axis_values, times, s, ds, qfi)


def point_evaluation(config: SweepConfig, angles: InitialAngles, t: float) -> tuple[float, np.ndarray]:
    """Standalone (qfi, Bloch vector) at one grid point, bypassing the kernels."""
    if config.bath_n is not None:
        spec = BathSpec(config.bath_n, config.params.g)
        s, ds = reduced_bloch_bath(angles.theta1, angles.phi1, spec, config.params, t, config.eta)
        if config.derivative_method == "exact":
            return qfi_bath(angles.theta1, angles.phi1, config.eta, spec, config.params, t), s.vector
        raise NotImplementedError("finite-difference spot checks are single-spin only")
    s = reduced_bloch(evolve(prepare_initial(angles), config.params, t)).vector
    if config.derivative_method == "exact":
        return qfi_exact(angles, config.eta, config.params, t), s
    return qfi_finite_difference(angles, config.eta, config.params, t, config.fd_step), s


def spot_check(table: SweepTable, n: int = 10, seed: int = 0) -> float:
    """Compare ``n`` random grid rows against standalone evaluations.

    Returns the largest absolute deviation; raises InvariantViolation above
    ``SPOT_CHECK_TOLERANCE``.
    """
    cfg = table.config
    if cfg.bath_n is not None and cfg.derivative_method == "fd":
        return 0.0
    rng = np.random.default_rng(seed)
    worst = 0.0
    n_k, n_t = table.qfi.shape
    for _ in range(n):
        k, i = int(rng.integers(n_k)), int(rng.integers(n_t))
        q, s = point_evaluation(cfg, table.angles_at(k), float(table.times[i]))
        dev = max(abs(q - table.qfi[k, i]), float(np.max(np.abs(s - table.s[k, i]))))
        # fd rows are only as good as the finite difference itself
        tol = SPOT_CHECK_TOLERANCE if cfg.derivative_method == "exact" else 1e-6
        if dev > tol:
            raise InvariantViolation(
                f"grid row ({cfg.axis}={table.axis_values[k]!r}, t={table.times[i]!r}) "
                f"deviates from standalone evaluation by {dev:.3e}"
            )
        worst = max(worst, dev)
    return worst


def _fmt(x: float) -> str:
    return repr(float(x))


def header_lines(config: SweepConfig) -> list[str]:
    """``key=value`` pairs echoing every parameter the sweep consumed."""
    p = config.params
    lines = [
        f"tool=centralqfi {__version__}",
        f"preset={config.preset or 'none'}",
        f"eta={config.eta.value}",
        f"derivative={config.derivative_method}",
    ]
    if config.derivative_method == "fd":
        lines.append(f"fd_step={_fmt(config.fd_step)}")
    lines += [f"{name}={_fmt(getattr(p, name))}" for name in PARAM_NAMES]
    lines.append(f"derived.delta={_fmt(p.delta)}")
    if config.bath_n is None:
        lines.append(f"derived.delta_minus={_fmt(p.delta_minus)}")
        lines.append(f"derived.delta_plus={_fmt(p.delta_plus)}")
        angle_names = ANGLE_NAMES
    else:
        lines.append(f"bath_n={config.bath_n}")
        angle_names = ("theta1", "phi1")
    for name in angle_names:
        value = "swept" if name == config.axis else _fmt(getattr(config.angles, name))
        lines.append(f"{name}={value}")
    lines.append(f"grid.{config.axis}={config.axis_grid}")
    lines.append(f"grid.t={config.t_grid}")
    lines += [f"note={n}" for n in config.notes]
    return lines


def format_csv(table: SweepTable) -> str:
    cfg = table.config
    buf = io.StringIO()
    for line in header_lines(cfg):
        buf.write(f"# {line}\n")
    buf.write(",".join(COLUMNS) + "\n")
    norms = np.sqrt(np.einsum("kti,kti->kt", table.s, table.s))
    eta_name = cfg.eta.value
    for k, v in enumerate(table.axis_values):
        angles = {name: getattr(cfg.angles, name) for name in ANGLE_NAMES}
        angles[cfg.axis] = v
        if cfg.bath_n is None:
            lead = ",".join([eta_name] + [_fmt(angles[n]) for n in ANGLE_NAMES])
        else:
            lead = ",".join([eta_name, _fmt(angles["theta1"]), _fmt(angles["phi1"]), "", ""])
        s_k, q_k, n_k = table.s[k], table.qfi[k], norms[k]
        for i, t in enumerate(table.times):
            values = (t, q_k[i], *s_k[i], n_k[i])
            buf.write(lead + "," + ",".join(_fmt(x) for x in values) + "\n")
    return buf.getvalue()


def run_sweep(config: SweepConfig, spot_checks: int = 0) -> str:
    """Compute the sweep and return its CSV text; writes it when an output path is set."""
    table = compute_sweep(config)
    if spot_checks:
        spot_check(table, spot_checks)
    text = format_csv(table)
    if config.output_path and config.output_path != "-":
        path = Path(config.output_path)
        path.write_text(text, encoding="utf-8", newline="\n")
        if config.emit_plot_script:
            emit_plot_script(path, config)
    return text


def count_peaks(series: Sequence[tuple[float, float]]) -> int:
    """Number of strict interior local maxima of a (t, value) series.

    A run of equal values that is higher than both of its neighbours counts
    as one peak.
    """
    if len(series) < 3:
        raise ValueError(f"need at least 3 points to count peaks, got {len(series)}")
    ts = [float(t) for t, _ in series]
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("times must be strictly ascending")
    runs: list[float] = []
    for _, q in series:
        if not runs or q != runs[-1]:
            runs.append(q)
    return sum(1 for i in range(1, len(runs) - 1) if runs[i] > runs[i - 1] and runs[i] > runs[i + 1])


def read_csv(path) -> tuple[dict[str, str], list[dict[str, str]]]:
    """Parse a sweep CSV into (header key/values, rows as column dicts)."""
    meta: dict[str, str] = {}
    rows: list[dict[str, str]] = []
    columns: list[str] | None = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                if key != "note":
                    meta[key] = value
                continue
            if not line:
                continue
            fields = line.split(",")
            if columns is None:
                columns = fields
            else:
                rows.append(dict(zip(columns, fields)))
    if columns is None:
        raise ValueError(f"{path}: no column header row")
    return meta, rows


def series_at(rows: Iterable[dict[str, str]], column: str, value: float) -> tuple[float, list[tuple[float, float]]]:
    """(t, qfi) series of the rows whose ``column`` is closest to ``value``."""
    rows = list(rows)
    if not rows or column not in rows[0]:
        raise KeyError(f"column {column!r} not in CSV")
    candidates = sorted({float(r[column]) for r in rows if r[column] != ""})
    nearest = min(candidates, key=lambda c: abs(c - value))
    series = [(float(r["t"]), float(r["qfi"])) for r in rows if r[column] != "" and float(r[column]) == nearest]
    series.sort()
    return nearest, series


PLOT_TEMPLATE = '''"""Heat map and line cut of a centralqfi sweep. Generated file."""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

CSV = Path(__file__).with_name({csv_name!r})
AXIS = {axis!r}
ETA = {eta!r}

lines = [line for line in CSV.read_text(encoding="utf-8").splitlines() if not line.startswith("#")]
data = np.genfromtxt(lines, delimiter=",", names=True, dtype=None, encoding="utf-8")
axis_values = np.unique(data[AXIS])
t_values = np.unique(data["t"])
qfi = np.asarray(data["qfi"], dtype=float).reshape(len(axis_values), len(t_values))

# heat map
fig, ax = plt.subplots(figsize=(6, 4.5))
mesh = ax.pcolormesh(axis_values, t_values, qfi.T, shading="auto", cmap="viridis")
fig.colorbar(mesh, ax=ax, label=f"F_{{ETA}}")
ax.set_xlabel(AXIS)
ax.set_ylabel("t")
fig.tight_layout()
fig.savefig(CSV.with_name(CSV.stem + "_heatmap.png"), dpi=150)

# line cut
mid = len(axis_values) // 2
fig, ax = plt.subplots(figsize=(6, 3.5))
ax.plot(t_values, qfi[mid])
ax.set_xlabel("t")
ax.set_ylabel(f"F_{{ETA}} at {{AXIS}}={{axis_values[mid]:.4g}}")
fig.tight_layout()
fig.savefig(CSV.with_name(CSV.stem + "_cut.png"), dpi=150)
'''


def plot_script_text(csv_name: str, config: SweepConfig) -> str:
    return PLOT_TEMPLATE.format(csv_name=csv_name, axis=config.axis, eta=config.eta.value)


def emit_plot_script(csv_path, config: SweepConfig) -> Path:
    """Write ``<csv stem>_plot.py`` next to the CSV and return its path."""
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise FileNotFoundError(csv_path)
    script = csv_path.with_name(csv_path.stem + "_plot.py")
    script.write_text(plot_script_text(csv_path.name, config), encoding="utf-8", newline="\n")
    return script
