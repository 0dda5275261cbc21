"""End-to-end transfer experiments: thermal states through the protocol.

Assembles the pieces: pick three ro-vibrational levels, populate them
thermally, run the pulse protocol for both handednesses, and quantify the
resulting enrichment. Sweep helpers generate the excess, population and
yield curves against rotational temperature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ctls import Chirality, total_unitary
from .propagator import apply_to_density, ideal_schedule, run_protocol
from .rotor import RotationalConstants, RotorLevel, rotor_levels
from .thermal import (
    OccupationTriple,
    RoVibLevel,
    Temperatures,
    VibrationalMode,
    ctls_populations,
    global_proportion,
    yield_eta,
)

__all__ = [
    "RO_VIBRATIONAL",
    "PURELY_ROTATIONAL",
    "LABELINGS",
    "CtlsConfig",
    "TransferResult",
    "rotor_level_for_labels",
    "make_level",
    "thermal_initial_state",
    "final_states",
    "enantiomeric_excess",
    "run_transfer",
    "excess_sweep",
    "population_sweep",
    "yield_sweep",
    "default_sweep_grid",
]

RO_VIBRATIONAL = "ro_vibrational"
PURELY_ROTATIONAL = "purely_rotational"
_MODES = (RO_VIBRATIONAL, PURELY_ROTATIONAL)

LABELINGS = ("tau", "ka_kc")


def rotor_level_for_labels(
    constants: RotationalConstants,
    j: int,
    first: int,
    second: int,
    labeling: str = "tau",
) -> RotorLevel:
    """Resolve a rotor level from its two printed subscript digits.

    Under ``tau`` the digits are read as (tau, M); under ``ka_kc`` the same
    digits are read as (K_a, K_c), mapped through tau = K_a - K_c. Both
    conventions agree on which J block is meant, they only reorder levels
    within it.
    """
    if labeling == "tau":
        tau = first
        if not -j <= second <= j and j > 0:
            raise ValueError(f"M must lie in [-J, J], got M={second} for J={j}")
        if j == 0 and second != 0:
            raise ValueError(f"M must be 0 for J=0, got {second}")
    elif labeling == "ka_kc":
        ka, kc = first, second
        if not (0 <= ka <= j and 0 <= kc <= j and ka + kc in (j, j + 1)):
            raise ValueError(
                f"(K_a, K_c) = ({ka}, {kc}) is not a valid label for J = {j}"
            )
        tau = ka - kc
    else:
        raise ValueError(f"labeling must be one of {LABELINGS}, got {labeling!r}")
    if not -j <= tau <= j:
        raise ValueError(f"tau must lie in [-J, J], got tau={tau} for J={j}")
    return rotor_levels(j, constants)[tau + j]


def make_level(
    constants: RotationalConstants,
    modes: Sequence[VibrationalMode],
    vib: int,
    j: int,
    first: int,
    second: int,
    labeling: str = "tau",
) -> RoVibLevel:
    """Build a ro-vibrational level; the vibrational quantum excites the
    first declared mode."""
    if vib > 0 and not modes:
        raise ValueError("a vibrationally excited level requires a declared mode")
    if vib > 0 and vib > modes[0].max_quanta:
        raise ValueError(
            f"vib quantum {vib} exceeds max_quanta {modes[0].max_quanta} "
            f"of mode {modes[0].name!r}"
        )
    vib_energy_thz = vib * modes[0].frequency_thz if vib > 0 else 0.0
    rot = rotor_level_for_labels(constants, j, first, second, labeling)
    return RoVibLevel(vib_quantum=vib, vib_energy_thz=vib_energy_thz, rot=rot)


@dataclass(frozen=True)
class CtlsConfig:
    """A concrete three-level loop choice for one molecule."""

    mode: str
    constants: RotationalConstants
    modes: tuple[VibrationalMode, ...]
    levels: tuple[RoVibLevel, RoVibLevel, RoVibLevel]
    labeling: str = "tau"

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.labeling not in LABELINGS:
            raise ValueError(f"labeling must be one of {LABELINGS}, got {self.labeling!r}")
        if len(self.levels) != 3:
            raise ValueError(f"expected 3 levels, got {len(self.levels)}")
        quanta = tuple(level.vib_quantum for level in self.levels)
        if self.mode == RO_VIBRATIONAL and (quanta[0] != 0 or 0 in quanta[1:]):
            raise ValueError(
                f"ro_vibrational loop needs vib quanta (0, >0, >0), got {quanta}"
            )
        if self.mode == PURELY_ROTATIONAL and quanta != (0, 0, 0):
            raise ValueError(
                f"purely_rotational loop needs vib quanta (0, 0, 0), got {quanta}"
            )

    def populations(self, temps: Temperatures) -> OccupationTriple:
        return ctls_populations(self.levels, temps)


@dataclass(frozen=True)
class TransferResult:
    """Initial and final level occupations of one protocol run."""

    initial: OccupationTriple
    final_left: tuple[float, float, float]
    final_right: tuple[float, float, float]
    excess: float
    temperatures: Temperatures


def thermal_initial_state(populations: OccupationTriple) -> np.ndarray:
    """Diagonal density matrix diag(p1, p2, p3)."""
    return np.diag(populations.as_array()).astype(complex)


def final_states(
    populations: OccupationTriple,
    method: str = "analytic",
    steps_per_step: int = 2000,
) -> tuple[np.ndarray, np.ndarray]:
    """Density matrices after the protocol for the two handednesses.

    ``analytic`` conjugates by the closed-form composite unitaries;
    ``numeric`` propagates the canonical rectangular schedule. Either way
    the left-handed final occupations are (p1, p3, p2) and the right-handed
    ones (p2, p1, p3).
    """
    rho = thermal_initial_state(populations)
    if method == "analytic":
        u_left = total_unitary(Chirality.L)
        u_right = total_unitary(Chirality.R)
    elif method == "numeric":
        schedule = ideal_schedule()
        u_left = run_protocol(schedule, Chirality.L, steps_per_step)
        u_right = run_protocol(schedule, Chirality.R, steps_per_step)
    else:
        raise ValueError(f"method must be 'analytic' or 'numeric', got {method!r}")
    return apply_to_density(u_left, rho), apply_to_density(u_right, rho)


def enantiomeric_excess(populations: OccupationTriple) -> float:
    """Normalized population difference between enantiomers in level |2>.

    After the protocol the left-handed |2> occupation is p3 and the
    right-handed one is p1, giving |p3 - p1| / (p3 + p1). The equivalent
    ratio form |1 - 2/(1 + p1/p3)| is evaluated as a consistency check.
    """
    p1, p3 = populations.p1, populations.p3
    if p1 + p3 == 0.0:
        raise ValueError("excess undefined: levels 1 and 3 are both unoccupied")
    direct = abs(p3 - p1) / (p3 + p1)
    if p1 == 0.0 or p3 == 0.0:
        from_ratio = 1.0
    else:
        from_ratio = abs(1.0 - 2.0 / (1.0 + p1 / p3))
    if abs(direct - from_ratio) > 1e-9:
        raise ArithmeticError(
            f"excess forms disagree: {direct} vs {from_ratio} for p = {populations}"
        )
    return direct


def run_transfer(
    config: CtlsConfig, temps: Temperatures, method: str = "analytic"
) -> TransferResult:
    """Full experiment at fixed temperatures."""
    populations = config.populations(temps)
    rho_left, rho_right = final_states(populations, method=method)
    return TransferResult(
        initial=populations,
        final_left=tuple(np.diag(rho_left).real),
        final_right=tuple(np.diag(rho_right).real),
        excess=enantiomeric_excess(populations),
        temperatures=temps,
    )


def default_sweep_grid(
    t_min_k: float = 1e-3, t_max_k: float = 300.0, points: int = 200,
    log_scale: bool = True,
) -> np.ndarray:
    """Temperature grid matching the log-scale axes of the result curves."""
    if t_min_k <= 0.0 or t_max_k <= t_min_k:
        raise ValueError(f"need 0 < t_min_k < t_max_k, got ({t_min_k}, {t_max_k})")
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    if log_scale:
        return np.logspace(np.log10(t_min_k), np.log10(t_max_k), points)
    return np.linspace(t_min_k, t_max_k, points)


def excess_sweep(
    config: CtlsConfig, t_rot_values: Sequence[float], t_vib_k: float = 300.0
) -> np.ndarray:
    """Enantiomeric excess at each rotational temperature, in input order."""
    return np.array(
        [
            enantiomeric_excess(config.populations(Temperatures(t, t_vib_k)))
            for t in t_rot_values
        ]
    )


def population_sweep(
    config: CtlsConfig, t_rot_values: Sequence[float], t_vib_k: float = 300.0
) -> np.ndarray:
    """Level populations (p1, p2, p3) per temperature; shape (N, 3)."""
    return np.array(
        [
            config.populations(Temperatures(t, t_vib_k)).as_array()
            for t in t_rot_values
        ]
    )


def yield_sweep(
    config: CtlsConfig,
    t_rot_values: Sequence[float],
    t_vib_k: float = 300.0,
    rel_tol: float = 1e-8,
) -> np.ndarray:
    """Whole-manifold proportions and yield per temperature; shape (N, 4).

    Columns are (P1, P2, P3, eta) with eta = P1 / 2.
    """
    rows = []
    for t in t_rot_values:
        temps = Temperatures(t, t_vib_k)
        proportions = [
            global_proportion(level, config.constants, config.modes, temps, rel_tol)
            for level in config.levels
        ]
        rows.append(proportions + [yield_eta(proportions[0])])
    return np.array(rows)
