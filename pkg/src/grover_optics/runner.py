"""Run modes and deterministic file output.

Every mode writes a ``summary.json`` plus mode-specific CSV tables into
an output directory.  Numeric results are rendered with 9 significant
digits and rows in a fixed order, so identical configs produce
byte-identical files.  The config echo inside the summary is written
verbatim (not rounded) so it re-parses to an equivalent config.
"""

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import analysis, reference
from ._version import __version__
from .cavity import pulse_train, run_search
from .config import ExperimentConfig
from .errors import ConfigurationError, MeasurementError

__all__ = ["run", "sweep"]


def _round9(value: float) -> float:
    return float(f"{float(value):.9g}")


def _write_table(path: Path, header: str, table: np.ndarray) -> None:
    np.savetxt(path, table, fmt="%.9g", delimiter=",", comments="", header=header)


def _write_summary(path: Path, summary: dict) -> None:
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _search_summary(cfg: ExperimentConfig, trace) -> dict:
    peaks = analysis.PeakTrace.from_search_trace(
        trace, compensated=cfg.compensate_loss
    )
    warnings: list[str] = []
    flagged = np.flatnonzero(trace.peak_at_edge)
    if flagged.size:
        warnings.append(
            f"peak on grid edge for pulse rows {flagged.tolist()}; "
            "profile may be clipped"
        )
    try:
        k_star = analysis.first_maximum(peaks)
    except MeasurementError as err:
        k_star = None
        warnings.append(f"first_maximum unavailable: {err}")

    fwhm_m = cfg.input_fwhm_mm * 1e-3
    flat_m = cfg.oracle.flat_width_um * 1e-6
    resolution_m = analysis.rayleigh_resolution(
        cfg.wavelength_nm * 1e-9, cfg.numerical_aperture
    )
    summary = {
        "artifact_version": __version__,
        "mode": cfg.mode,
        "first_maximum": None if k_star is None else _round9(k_star),
        "estimate_nm": (
            None
            if k_star is None
            else _round9(analysis.estimate_nm(k_star, abs(cfg.oracle.phase_rad)))
        ),
        "expected_nm": _round9(analysis.expected_nm(fwhm_m, flat_m)),
        "rayleigh_resolution_m": _round9(resolution_m),
        "max_database_size": _round9(
            analysis.max_database_size(fwhm_m, resolution_m, 1)
        ),
        "equivalent_qubits": _round9(
            analysis.equivalent_qubits(fwhm_m, resolution_m, 1)
        ),
        "config": cfg.model_dump(mode="json"),
    }
    if warnings:
        summary["warnings"] = warnings
    return summary


def _run_search_mode(cfg: ExperimentConfig, out_dir: Path) -> dict:
    trace = run_search(cfg.to_cavity_config())

    if cfg.mode == "search":
        n = trace.grid.n_samples
        x = trace.grid.coordinates
        profile_table = np.column_stack(
            [
                np.repeat(trace.iteration_counts, n),
                np.tile(x, trace.n_pulses),
                trace.profiles.ravel(),
                trace.compensated_profiles.ravel(),
            ]
        )
        _write_table(
            out_dir / "profiles.csv",
            "iteration_count,x_m,intensity,compensated_intensity",
            profile_table,
        )

    peak_values = (
        trace.compensated_peak_values if cfg.compensate_loss else trace.peak_values
    )
    _write_table(
        out_dir / "peaks.csv",
        "iteration_count,peak_position_m,peak_value",
        np.column_stack([trace.iteration_counts, trace.peak_positions, peak_values]),
    )

    summary = _search_summary(cfg, trace)
    _write_summary(out_dir / "summary.json", summary)
    return summary


def _run_pulse_train_mode(cfg: ExperimentConfig, out_dir: Path) -> dict:
    train = pulse_train(cfg.to_cavity_config())
    counts = [count for count, _ in train]
    energies = [energy for _, energy in train]
    _write_table(
        out_dir / "train.csv",
        "iteration_count,slit_energy",
        np.column_stack([counts, energies]),
    )
    ratios = [
        energies[i + 1] / energies[i] if energies[i] > 0 else float("nan")
        for i in range(len(energies) - 1)
    ]
    summary = {
        "artifact_version": __version__,
        "mode": cfg.mode,
        "slit_energies": [_round9(e) for e in energies],
        "consecutive_energy_ratios": [_round9(r) for r in ratios],
        "config": cfg.model_dump(mode="json"),
    }
    _write_summary(out_dir / "summary.json", summary)
    return summary


def _run_reference_mode(cfg: ExperimentConfig, out_dir: Path) -> dict:
    ref = cfg.reference
    state = reference.GroverReducedState.uniform(ref.n_items, ref.n_marked)
    rows = []
    for k in range(ref.n_iterations + 1):
        rows.append(
            (
                float(k),
                state.success_probability,
                reference.success_probability(k, ref.n_items, ref.n_marked),
            )
        )
        state = reference.reduced_iterate(
            state, ref.oracle_phase_rad, ref.diffusion_phase_rad
        )
    _write_table(
        out_dir / "reference.csv",
        "iteration,success_probability,ideal_closed_form",
        np.asarray(rows),
    )
    probabilities = [row[1] for row in rows]
    best = int(np.argmax(probabilities))
    summary = {
        "artifact_version": __version__,
        "mode": cfg.mode,
        "max_success_probability": _round9(probabilities[best]),
        "argmax_iteration": best,
        "optimal_iterations": _round9(
            reference.optimal_iterations(
                ref.n_items, ref.n_marked, abs(ref.oracle_phase_rad) / 2.0
            )
        ),
        "oscillation_period": _round9(
            reference.oscillation_period(ref.n_items, ref.n_marked)
        ),
        "config": cfg.model_dump(mode="json"),
    }
    _write_summary(out_dir / "summary.json", summary)
    return summary


def run(cfg: ExperimentConfig, out_dir: str | Path) -> dict:
    """Execute one configured run; returns the summary that was written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if cfg.mode == "reference":
        return _run_reference_mode(cfg, out)
    if cfg.mode == "pulse-train":
        return _run_pulse_train_mode(cfg, out)
    return _run_search_mode(cfg, out)


def _set_by_path(raw: dict, dotted: str, value: float) -> None:
    parts = dotted.split(".")
    node = raw
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node:
            raise ConfigurationError(f"unknown sweep parameter {dotted!r}")
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ConfigurationError(f"unknown sweep parameter {dotted!r}")
    node[leaf] = value


_SWEEP_COLUMNS = {
    "search": ("first_maximum", "estimate_nm", "expected_nm"),
    "analyze": ("first_maximum", "estimate_nm", "expected_nm"),
    "reference": ("max_success_probability", "optimal_iterations", "oscillation_period"),
    "pulse-train": ("mean_consecutive_ratio",),
}


def _sweep_scalars(cfg_mode: str, summary: dict) -> list:
    if cfg_mode == "pulse-train":
        ratios = summary["consecutive_energy_ratios"]
        valid = [r for r in ratios if not np.isnan(r)]
        return [float(np.mean(valid)) if valid else float("nan")]
    return [summary.get(col) for col in _SWEEP_COLUMNS[cfg_mode]]


def sweep(cfg: ExperimentConfig, out_dir: str | Path) -> dict:
    """Cartesian-product sweep over the configured axes.

    Each grid point becomes an independent run in ``point_NNN/`` under
    the output directory, executed by up to ``cfg.workers`` threads;
    the aggregate table ``sweep.csv`` is keyed by the swept values in
    deterministic (row-major product) order.  With no axes configured
    this degenerates to a single ordinary run.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not cfg.sweep:
        return run(cfg, out)

    axes = cfg.sweep
    base = cfg.model_dump(mode="json")
    base["sweep"] = []
    combos = list(itertools.product(*(axis.values for axis in axes)))

    point_configs: list[ExperimentConfig] = []
    for combo in combos:
        raw = json.loads(json.dumps(base))  # deep copy
        for axis, value in zip(axes, combo):
            _set_by_path(raw, axis.parameter, value)
        point_configs.append(ExperimentConfig.model_validate(raw))

    def _execute(index: int) -> dict:
        return run(point_configs[index], out / f"point_{index:03d}")

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            summaries = list(pool.map(_execute, range(len(combos))))
    else:
        summaries = [_execute(i) for i in range(len(combos))]

    value_columns = _SWEEP_COLUMNS[cfg.mode]
    header = ",".join(
        ["point", *(axis.parameter for axis in axes), *value_columns]
    )
    lines = [header]
    for index, (combo, summary) in enumerate(zip(combos, summaries)):
        cells = [str(index)]
        cells += [f"{v:.9g}" for v in combo]
        for scalar in _sweep_scalars(cfg.mode, summary):
            cells.append("nan" if scalar is None else f"{float(scalar):.9g}")
        lines.append(",".join(cells))
    (out / "sweep.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    aggregate = {
        "artifact_version": __version__,
        "mode": cfg.mode,
        "axes": [axis.model_dump() for axis in axes],
        "n_points": len(combos),
        "points": [
            {
                "point": index,
                "values": list(combo),
                "summary_dir": f"point_{index:03d}",
            }
            for index, combo in enumerate(combos)
        ],
    }
    _write_summary(out / "sweep_summary.json", aggregate)
    return aggregate
