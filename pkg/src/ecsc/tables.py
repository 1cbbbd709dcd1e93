"""Reference energy tables and the machinery to recompute and diff them.

Six tables of previously published bound-state energies for the
exponential-cosine-screened Coulomb potential are bundled verbatim as
regression fixtures:

  T1  1s level, atomic units, A = 1, delta = 0.01 .. 0.10
  T2  2s level, same setup
  T3  2s and 2p levels at selected delta
  T4  3s, 3p and 3d levels at selected delta
  T5  1s .. 3d levels with hbar = m = 1, A = sqrt(2), delta = sqrt(2) G
  T6  levels for A in {4, 8, 16, 24} with hbar = 1, m = 1/2, delta = 0.2

Columns published alongside (large-order 1/N expansions, dynamical-group
values, Pade tables, variational bounds) are carried as read-only context
and never recomputed.  Every cell of the main energy column is recomputed
through the closed-form perturbation route and diffed at full precision;
the per-table gate decides pass or fail, not the printed digit count.

Known upstream data issues (kept verbatim, they fail their gates honestly):
T3's 2p cell at delta = 0.04 disagrees with the closed forms by 3.2e-6
(digit slip), and T5's 3d column beyond G = 0.002 was evidently produced
with half the first-order shift; see the package README for the analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    ATOMIC,
    HBAR2M,
    QuantumState,
    ScreeningSpec,
    SecondOrderVariant,
    UnitSystem,
    state_from_label,
)
from .coulomb import coulomb_energy
from .perturbation import superpotential_first, total_energy
from .potential import effective_potential
from .quadrature import (
    first_order_energy_numeric,
    second_order_energy_numeric,
)
from .radial import (
    IterationLimitError,
    NoBoundStateError,
    default_solver_config,
    solve_bound_state,
)

# --- frozen reference data -------------------------------------------------
# (delta, 1/N expansion, dynamical, shifted 1/N, energy)
_T1_ROWS = (
    (0.01, -0.490001, -0.4900010, None, -0.4900009),
    (0.02, -0.480008, -0.4800078, -0.48000783, -0.4800078),
    (0.03, -0.470026, -0.4700260, None, -0.4700259),
    (0.04, -0.460061, -0.4600609, -0.46006101, -0.4600608),
    (0.05, -0.450117, -0.4501174, None, -0.4501172),
    (0.06, -0.440200, -0.4402004, -0.44020057, -0.4402000),
    (0.07, -0.430313, None, None, -0.4303134),
    (0.08, -0.420461, -0.4204636, -0.42046386, -0.4204617),
    (0.09, -0.410647, None, None, -0.4106488),
    (0.10, -0.400875, -0.4008839, -0.40088421, -0.4008785),
)

_T2_ROWS = (
    (0.01, -0.115013, -0.1150135, None, -0.1150134),
    (0.02, -0.105103, -0.1051036, -0.10510361, -0.1051033),
    (0.03, -0.095334, -0.0953366, None, -0.0953346),
    (0.04, -0.085755, -0.0857690, -0.08576959, -0.0857621),
    (0.05, -0.076406, -0.0764497, None, -0.0764326),
    (0.06, -0.067311, -0.0674217, -0.06742608, -0.0673900),
    (0.07, -0.058482, None, None, -0.0586800),
    (0.08, -0.049915, -0.0503922, -0.05040825, -0.0503576),
    (0.09, -0.041598, None, None, -0.0424945),
    (0.10, -0.033500, -0.0349677, -0.03500467, -0.0351880),
)

# (state, delta, Pade E[10,10], Pade E[10,11], perturbation, variational,
#  shifted 1/N, energy)
_T3_ROWS = (
    ("2s", 0.10, -0.034941, -0.034941, -0.034425, -0.034935, -0.03500467, -0.0351880),
    ("2p", 0.10, -0.032469, -0.032469, -0.032042, None, -0.03247015, -0.0326733),
    ("2s", 0.08, -0.050387, -0.050387, -0.050222, -0.050384, -0.05040825, -0.0503576),
    ("2p", 0.08, -0.048997, -0.048997, None, None, -0.04899693, -0.0489939),
    ("2s", 0.06, -0.067421, -0.067421, -0.067385, -0.067421, -0.06742608, -0.0673900),
    ("2p", 0.06, -0.066778, -0.066778, None, None, -0.06677729, -0.0667611),
    ("2s", 0.04, -0.085769, -0.085769, -0.085767, -0.085769, -0.08576959, -0.0857621),
    ("2p", 0.04, -0.085591, -0.085591, None, None, -0.08555913, -0.0855520),
    ("2s", 0.02, -0.105104, -0.105104, -0.105104, -0.105104, -0.10510361, -0.1051033),
    ("2p", 0.02, -0.105075, -0.105075, -0.105075, None, -0.10507464, -0.1050744),
)

_T4_ROWS = (
    ("3s", 0.06, -0.005461, -0.005462, -0.004538, -0.005454, -0.00566638, -0.0070778),
    ("3p", 0.06, -0.004471, -0.004472, None, None, -0.00449233, -0.0054058),
    ("3d", 0.06, -0.002308, -0.002309, None, None, -0.00231356, -0.0029240),
    ("3s", 0.05, -0.011576, -0.011576, None, None, -0.01168544, -0.0119523),
    ("3p", 0.05, -0.010929, -0.010929, -0.010538, None, -0.01093985, -0.0111117),
    ("3d", 0.05, -0.009555, -0.009555, -0.009292, None, -0.00955542, -0.0096940),
    ("3s", 0.04, -0.018823, -0.018823, -0.018707, -0.018822, -0.01886716, -0.0188586),
    ("3p", 0.04, -0.018453, -0.018453, None, None, -0.01845705, -0.0184505),
    ("3d", 0.04, -0.017682, -0.017682, None, None, -0.01768208, -0.0176910),
    ("3s", 0.02, -0.036025, -0.036025, -0.036022, -0.036025, -0.03602738, -0.0360213),
    ("3p", 0.02, -0.035968, -0.035968, -0.035965, None, -0.03596771, -0.0359640),
    ("3d", 0.02, -0.035851, -0.035851, -0.035849, None, -0.03585066, -0.0358490),
)

# (G, state, energy); published as binding energies -E, stored signed
_T5_ROWS = (
    (0.002, "1s", -0.9960000), (0.002, "2s", -0.2460002), (0.002, "2p", -0.2460001),
    (0.002, "3p", -0.1071120), (0.002, "3d", -0.1071114),
    (0.005, "1s", -0.9900002), (0.005, "2s", -0.2400034), (0.005, "2p", -0.2400024),
    (0.005, "3p", -0.1011255), (0.005, "3d", -0.1011160),
    (0.010, "1s", -0.9800019), (0.010, "2s", -0.2300269), (0.010, "2p", -0.2300193),
    (0.010, "3p", -0.0912217), (0.010, "3d", -0.0911475),
    (0.020, "1s", -0.9600156), (0.020, "2s", -0.2102066), (0.020, "2p", -0.2101489),
    (0.020, "3p", -0.0719281), (0.020, "3d", -0.0713617),
    (0.025, "1s", -0.9500302), (0.025, "2s", -0.2003953), (0.025, "2p", -0.2002857),
    (0.025, "3p", -0.0626485), (0.025, "3d", -0.0615665),
    (0.050, "1s", -0.9002344), (0.050, "2s", -0.1528652), (0.050, "2p", -0.1520991),
    (0.050, "3p", -0.0222235), (0.050, "3d", -0.0141374),
)

# (A, ell, n, energy); published as binding energies -E, stored signed
_T6_ROWS = (
    (4, 0, 0, -3.207029),
    (8, 0, 0, -14.403752),
    (8, 1, 0, -2.433587),
    (16, 0, 0, -60.801938),
    (16, 1, 0, -12.818287),
    (24, 0, 0, -139.20131),
    (24, 1, 0, -31.212563),
    (24, 2, 0, -11.249961),
    (16, 0, 1, -12.825303),
    (16, 0, 2, -4.023139),
    (16, 1, 1, -4.009505),
    (24, 0, 1, -31.217455),
    (24, 0, 2, -11.279786),
    (24, 1, 1, -11.269899),
    (24, 1, 2, -4.412177),
    (24, 2, 1, -4.380887),
    (24, 2, 2, -1.411568),
)

_T5_UNITS = UnitSystem(1.0, 1.0, label="hbar=m=1")
_T5_STRENGTH = math.sqrt(2.0)


@dataclass(frozen=True)
class TableDefinition:
    """Identity, parameter policy and acceptance gate of one reference table."""

    table_id: str
    title: str
    units: UnitSystem
    tolerance: float
    key_columns: tuple[str, ...]
    reference_columns: tuple[str, ...]
    sign: int  # +1 tables print E, -1 tables print the binding energy -E


TABLES: dict[str, TableDefinition] = {
    "T1": TableDefinition(
        "T1", "1s level vs screening, atomic units, A = 1", ATOMIC, 1e-6,
        ("delta",), ("1/N", "dynamical", "shifted 1/N"), +1,
    ),
    "T2": TableDefinition(
        "T2", "2s level vs screening, atomic units, A = 1", ATOMIC, 1e-6,
        ("delta",), ("1/N", "dynamical", "shifted 1/N"), +1,
    ),
    "T3": TableDefinition(
        "T3", "2s and 2p levels vs screening, atomic units, A = 1", ATOMIC, 1e-6,
        ("state", "delta"),
        ("E[10,10]", "E[10,11]", "perturbation", "variational", "shifted 1/N"), +1,
    ),
    "T4": TableDefinition(
        "T4", "3s, 3p and 3d levels vs screening, atomic units, A = 1", ATOMIC, 1e-6,
        ("state", "delta"),
        ("E[10,10]", "E[10,11]", "perturbation", "variational", "shifted 1/N"), +1,
    ),
    "T5": TableDefinition(
        "T5", "binding energies, hbar = m = 1, A = sqrt(2), delta = sqrt(2) G",
        _T5_UNITS, 1e-6, ("G", "state"), (), -1,
    ),
    "T6": TableDefinition(
        "T6", "binding energies, hbar = 1, m = 1/2, delta = 0.2, A in {4, 8, 16, 24}",
        HBAR2M, 1e-5, ("A", "ell", "n"), (), -1,
    ),
}


@dataclass(frozen=True)
class TableCell:
    """One recomputed table entry and its diff against the frozen reference."""

    key: tuple[tuple[str, float | int | str], ...]
    state: QuantumState
    reference: float
    computed: float
    literature: tuple[tuple[str, float | None], ...] = ()

    @property
    def diff(self) -> float:
        return self.computed - self.reference


@dataclass(frozen=True)
class TableResult:
    definition: TableDefinition
    variant: SecondOrderVariant
    cells: tuple[TableCell, ...]

    @property
    def failures(self) -> tuple[TableCell, ...]:
        tol = self.definition.tolerance
        return tuple(c for c in self.cells if abs(c.diff) > tol)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def worst_abs_diff(self) -> float:
        return max(abs(c.diff) for c in self.cells)

    def summary(self) -> str:
        good = len(self.cells) - len(self.failures)
        return (
            f"{self.definition.table_id}: {good}/{len(self.cells)} cells within "
            f"{self.definition.tolerance:g} (worst |diff| = {self.worst_abs_diff:.2e})"
        )

    def to_csv_text(self) -> str:
        return _csv_text(self)

    def to_markdown_text(self) -> str:
        return _markdown_text(self)


def _cells_t1_t2(rows, state_label: str, variant) -> tuple[TableCell, ...]:
    state = state_from_label(state_label)
    cells = []
    for delta, one_n, dyn, shifted, ref in rows:
        spec = ScreeningSpec(delta=delta, strength=1.0)
        computed = total_energy(state, spec, ATOMIC, variant).total
        cells.append(
            TableCell(
                key=(("delta", delta),),
                state=state,
                reference=ref,
                computed=computed,
                literature=(("1/N", one_n), ("dynamical", dyn), ("shifted 1/N", shifted)),
            )
        )
    return tuple(cells)


def _cells_t3_t4(rows, variant) -> tuple[TableCell, ...]:
    cells = []
    for label, delta, p10, p11, pert, vari, shifted, ref in rows:
        state = state_from_label(label)
        spec = ScreeningSpec(delta=delta, strength=1.0)
        computed = total_energy(state, spec, ATOMIC, variant).total
        cells.append(
            TableCell(
                key=(("state", label), ("delta", delta)),
                state=state,
                reference=ref,
                computed=computed,
                literature=(
                    ("E[10,10]", p10), ("E[10,11]", p11), ("perturbation", pert),
                    ("variational", vari), ("shifted 1/N", shifted),
                ),
            )
        )
    return tuple(cells)


def _cells_t5(variant) -> tuple[TableCell, ...]:
    cells = []
    for g_factor, label, ref in _T5_ROWS:
        state = state_from_label(label)
        spec = ScreeningSpec(delta=_T5_STRENGTH * g_factor, strength=_T5_STRENGTH)
        computed = total_energy(state, spec, _T5_UNITS, variant).total
        cells.append(
            TableCell(
                key=(("G", g_factor), ("state", label)),
                state=state,
                reference=ref,
                computed=computed,
            )
        )
    return tuple(cells)


def _cells_t6(variant) -> tuple[TableCell, ...]:
    cells = []
    for strength, ell, n, ref in _T6_ROWS:
        state = QuantumState(n=n, ell=ell)
        spec = ScreeningSpec(delta=0.2, strength=float(strength))
        computed = total_energy(state, spec, HBAR2M, variant).total
        cells.append(
            TableCell(
                key=(("A", strength), ("ell", ell), ("n", n)),
                state=state,
                reference=ref,
                computed=computed,
            )
        )
    return tuple(cells)


def reproduce_table(
    table_id: str, variant: SecondOrderVariant = SecondOrderVariant.TRUNCATED
) -> TableResult:
    """Recompute one reference table cell by cell and diff at full precision."""
    tid = table_id.upper()
    if tid not in TABLES:
        raise KeyError(f"unknown table {table_id!r}; expected one of {sorted(TABLES)}")
    if tid == "T1":
        cells = _cells_t1_t2(_T1_ROWS, "1s", variant)
    elif tid == "T2":
        cells = _cells_t1_t2(_T2_ROWS, "2s", variant)
    elif tid == "T3":
        cells = _cells_t3_t4(_T3_ROWS, variant)
    elif tid == "T4":
        cells = _cells_t3_t4(_T4_ROWS, variant)
    elif tid == "T5":
        cells = _cells_t5(variant)
    else:
        cells = _cells_t6(variant)
    return TableResult(TABLES[tid], variant, cells)


# --- delta sweeps ----------------------------------------------------------


@dataclass(frozen=True)
class ComparisonRow:
    """Analytic, quadrature and (optionally) shooting-solver energies at one delta."""

    state_label: str
    delta: float
    analytic: float
    quadrature: float
    oracle: float | None = None
    oracle_status: str = ""
    reference: float | None = None

    @property
    def quad_minus_analytic(self) -> float:
        return self.quadrature - self.analytic

    @property
    def oracle_minus_analytic(self) -> float | None:
        return None if self.oracle is None else self.oracle - self.analytic


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ComparisonRow, ...]

    def to_csv_text(self) -> str:
        header = (
            "state,delta,E_analytic,E_quadrature,E_oracle,oracle_status,"
            "E_ref,quad_minus_analytic,oracle_minus_analytic"
        )
        lines = [header]
        for r in self.rows:
            oma = r.oracle_minus_analytic
            lines.append(
                ",".join(
                    (
                        r.state_label,
                        _num(r.delta),
                        _num(r.analytic),
                        _num(r.quadrature),
                        _num(r.oracle) if r.oracle is not None else "",
                        r.oracle_status,
                        _num(r.reference) if r.reference is not None else "",
                        _num(r.quad_minus_analytic),
                        _num(oma) if oma is not None else "",
                    )
                )
            )
        return "\n".join(lines) + "\n"

    def to_markdown_text(self) -> str:
        head = "| state | delta | analytic | quadrature | oracle | reference |"
        rule = "|---|---:|---:|---:|---:|---:|"
        lines = [head, rule]
        for r in self.rows:
            lines.append(
                "| {} | {} | {} | {} | {} | {} |".format(
                    r.state_label,
                    _num(r.delta),
                    _num(r.analytic),
                    _num(r.quadrature),
                    _num(r.oracle) if r.oracle is not None else (r.oracle_status or ""),
                    _num(r.reference) if r.reference is not None else "",
                )
            )
        return "\n".join(lines) + "\n"


def _reference_for(state: QuantumState, strength: float, units: UnitSystem, delta: float):
    # bundled 1s/2s atomic tables double as scan references where they apply
    if units.hbar != 1.0 or units.mass != 1.0 or strength != 1.0:
        return None
    rows = {(0, 0): _T1_ROWS, (1, 0): _T2_ROWS}.get((state.n, state.ell))
    if rows is None:
        return None
    for row in rows:
        if abs(row[0] - delta) < 1e-12:
            return row[-1]
    return None


def _quadrature_total(state, spec, units, variant) -> float:
    e0 = coulomb_energy(state, spec, units)
    if spec.delta == 0.0:
        return e0
    e1 = first_order_energy_numeric(state, spec, units)
    w1 = superpotential_first(
        state, spec, units, truncated=(variant is SecondOrderVariant.TRUNCATED)
    )
    e2 = second_order_energy_numeric(state, spec, units, w1)
    return e0 + spec.strength * spec.delta + e1 + e2


def scan_delta(
    state: QuantumState,
    strength: float,
    units: UnitSystem,
    delta_start: float,
    delta_end: float,
    steps: int,
    with_oracle: bool = False,
    variant: SecondOrderVariant = SecondOrderVariant.TRUNCATED,
) -> ScanResult:
    """One ComparisonRow per screening value on a uniform grid of ``steps`` points."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if delta_start < 0.0 or delta_end < delta_start:
        raise ValueError("need 0 <= delta_start <= delta_end")
    if steps == 1:
        deltas = [delta_start]
    else:
        span = delta_end - delta_start
        deltas = [delta_start + span * i / (steps - 1) for i in range(steps)]
    rows = []
    for delta in deltas:
        spec = ScreeningSpec(delta=delta, strength=strength)
        analytic = total_energy(state, spec, units, variant).total
        quadrature = _quadrature_total(state, spec, units, variant)
        oracle_val, status = None, ""
        if with_oracle:
            pot = lambda r: effective_potential(r, spec, state.ell, units)
            try:
                rf = solve_bound_state(pot, state, units, default_solver_config(state, spec, units))
                oracle_val = rf.energy
                status = "ok" if rf.converged else "not-converged"
            except NoBoundStateError:
                status = "no-bound-state"
            except IterationLimitError:
                status = "iteration-limit"
        rows.append(
            ComparisonRow(
                state_label=state.label,
                delta=delta,
                analytic=analytic,
                quadrature=quadrature,
                oracle=oracle_val,
                oracle_status=status,
                reference=_reference_for(state, strength, units, delta),
            )
        )
    return ScanResult(tuple(rows))


# --- rendering ---------------------------------------------------------------


def _num(x) -> str:
    # fixed 9-significant-digit rendering keeps emitted files byte-deterministic
    return f"{x:.9g}"


def _csv_text(result: TableResult) -> str:
    d = result.definition
    header = ",".join(d.key_columns) + ",E_ref,E_computed,diff"
    lines = [header]
    for cell in result.cells:
        keys = ",".join(_num(v) if isinstance(v, (int, float)) else str(v) for _, v in cell.key)
        lines.append(
            f"{keys},{_num(cell.reference)},{_num(cell.computed)},{_num(cell.diff)}"
        )
    return "\n".join(lines) + "\n"


def _markdown_text(result: TableResult) -> str:
    d = result.definition
    sign = d.sign
    value_name = "E" if sign > 0 else "-E"
    cols = list(d.key_columns) + list(d.reference_columns) + [
        f"{value_name} computed", f"{value_name} reference", "diff", "note",
    ]
    lines = [f"## {d.table_id}: {d.title}", ""]
    lines.append("| " + " | ".join(cols) + " |")
    lines.append("|" + "---|" * len(cols))
    tol = d.tolerance
    for cell in result.cells:
        parts = [_num(v) if isinstance(v, (int, float)) else str(v) for _, v in cell.key]
        for _, lit in cell.literature:
            parts.append(_num(sign * lit) if lit is not None else "")
        parts.append(_num(sign * cell.computed))
        parts.append(_num(sign * cell.reference))
        parts.append(_num(sign * cell.diff))
        parts.append("" if abs(cell.diff) <= tol else "exceeds gate")
        lines.append("| " + " | ".join(parts) + " |")
    lines.append("")
    lines.append(result.summary())
    return "\n".join(lines) + "\n"


def write_text(text: str, destination) -> None:
    """Write rendered table text to a path or file-like object."""
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
