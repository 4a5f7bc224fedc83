"""Dense statevector simulation of weighted classifier superpositions.

The register holds, most significant first:

  parameter   tau*P qubits, basis state i <-> grid model decode_theta(i)
  output      1 qubit, |0> <-> label -1, |1> <-> label +1
  accuracy    1 qubit, postselected on |0>
  count       ceil(log2(M+1)) qubits, only for the amplitude
              amplification path; holds the correct-classification count

so a basis index is ((i_param * 2 + output) * 2 + accuracy) * 2**c + count.
The data register that a hardware run would carry is deliberately not
simulated: classifier outputs enter as classical basis-state-conditional
bit flips, which leaves the statevector at 2**(tau*P + 2 + c) amplitudes
and a 26-qubit default cap instead of being dominated by training data.

The weighting routine brings the accuracy qubit, conditioned on the
parameter basis state, to sqrt(a)|0> + sqrt(1-a)|1>, either exactly or
through the sequential per-training-point rotation approximation whose
conditional probability is cos^2(pi/4 - (2c - M) * delta).  Postselection
is analytic: the rejected branch is projected out and the survivor is
renormalized, and the report carries the acceptance probability and
expected number of repetitions 1/p_acc rather than simulating retries.

Operations mutate the passed state in place and return it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import prng
from .model import (
    Dataset,
    ModelFamily,
    ParameterGrid,
    decode_all,
    grid_correct_counts,
    predict_many,
)

DEFAULT_QUBIT_CAP = 26
_ATOL = 1e-12


class QubitCapError(RuntimeError):
    """Requested register exceeds the simulable qubit budget."""


class StateError(RuntimeError):
    """Operation precondition on the state does not hold."""


class PostselectionImpossibleError(RuntimeError):
    """The postselected branch carries no probability mass."""


@dataclass(frozen=True)
class RegisterLayout:
    parameter_bits: int
    count_bits: int = 0
    qubit_cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self) -> None:
        if self.parameter_bits < 0 or self.count_bits < 0:
            raise ValueError("register widths must be non-negative")
        if self.total_qubits > self.qubit_cap:
            raise QubitCapError(
                f"{self.total_qubits} qubits requested, cap is {self.qubit_cap}"
            )

    @property
    def total_qubits(self) -> int:
        return self.parameter_bits + 2 + self.count_bits

    @property
    def model_count(self) -> int:
        return 1 << self.parameter_bits

    @property
    def count_values(self) -> int:
        return 1 << self.count_bits


def count_bits_for(dataset_size: int) -> int:
    """Width of a count register holding 0..dataset_size."""
    return max(1, math.ceil(math.log2(dataset_size + 1)))


class EnsembleState:
    """Statevector over the ensemble register."""

    __slots__ = ("layout", "amplitudes")

    def __init__(self, layout: RegisterLayout, amplitudes: np.ndarray | None = None) -> None:
        self.layout = layout
        size = 1 << layout.total_qubits
        if amplitudes is None:
            amplitudes = np.zeros(size, dtype=np.complex128)
        else:
            amplitudes = np.asarray(amplitudes, dtype=np.complex128)
            if amplitudes.shape != (size,):
                raise ValueError(f"amplitude vector must have length {size}")
        self.amplitudes = amplitudes

    def view(self) -> np.ndarray:
        """Amplitudes reshaped to (models, output, accuracy, count values)."""
        lay = self.layout
        return self.amplitudes.reshape(lay.model_count, 2, 2, lay.count_values)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def parameter_distribution(self) -> np.ndarray:
        """Probability of each parameter basis state, shape (E,)."""
        probs = np.abs(self.view()) ** 2
        return probs.sum(axis=(1, 2, 3))

    def accuracy_zero_probabilities(self) -> np.ndarray:
        """P(accuracy qubit = |0> conditioned on each parameter state)."""
        probs = np.abs(self.view()) ** 2
        per_model = probs.sum(axis=(1, 2, 3))
        zero_branch = probs[:, :, 0, :].sum(axis=(1, 2))
        out = np.full(self.layout.model_count, np.nan)
        populated = per_model > 0.0
        out[populated] = zero_branch[populated] / per_model[populated]
        return out

    def dump_csv(self, path) -> None:
        """Write basis,re,im rows; basis is the binary index string with
        the register order documented above, floats carry 17 significant
        digits."""
        n = self.layout.total_qubits
        lines = ["basis,re,im"]
        for i, amp in enumerate(self.amplitudes):
            lines.append(f"{i:0{n}b},{amp.real:.17g},{amp.imag:.17g}")
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")


def prepare_uniform(layout: RegisterLayout) -> EnsembleState:
    """Uniform superposition over the parameter register, work qubits |0>."""
    state = EnsembleState(layout)
    view = state.view()
    view[:, 0, 0, 0] = 1.0 / math.sqrt(layout.model_count)
    return state


def _require_accuracy_clear(state: EnsembleState) -> None:
    mass = float(np.sum(np.abs(state.view()[:, :, 1, :]) ** 2))
    if mass > _ATOL:
        raise StateError("accuracy qubit is not |0>; rotation already applied?")


def _require_output_clear(state: EnsembleState) -> None:
    mass = float(np.sum(np.abs(state.view()[:, 1, :, :]) ** 2))
    if mass > _ATOL:
        raise StateError("output qubit is not |0>; classifier already applied?")


def apply_accuracy_rotation_exact(state: EnsembleState, accuracies: np.ndarray) -> EnsembleState:
    """Rotate the accuracy qubit to sqrt(a)|0> + sqrt(1-a)|1> per model."""
    a = np.asarray(accuracies, dtype=np.float64)
    if a.shape != (state.layout.model_count,):
        raise ValueError("one accuracy per parameter basis state is required")
    if a.size and (a.min() < 0.0 or a.max() > 1.0):
        raise ValueError("accuracies outside [0, 1]")
    _require_accuracy_clear(state)
    view = state.view()
    c = np.sqrt(a)[:, None, None]
    s = np.sqrt(1.0 - a)[:, None, None]
    view[:, :, 1, :] = view[:, :, 0, :] * s
    view[:, :, 0, :] *= c
    return state


def apply_accuracy_rotation_sequential(
    state: EnsembleState,
    dataset: Dataset,
    family: ModelFamily,
    grid: ParameterGrid,
    delta: float,
) -> EnsembleState:
    """Hadamard the accuracy qubit, then for each training point rotate it
    by delta toward |0> (correctly classified) or |1> (misclassified),
    conditioned on the parameter basis state.

    The rotations share one axis, so the conditional probability lands at
    cos^2(pi/4 - (2 c_theta - M) delta), monotone in the correct count
    c_theta whenever 0 < delta <= pi/(4M)."""
    m = len(dataset)
    if not 0.0 < delta <= math.pi / (4.0 * m):
        raise ValueError(f"delta must lie in (0, pi/(4*{m})]")
    if grid.total_bits != state.layout.parameter_bits:
        raise ValueError("grid size does not match the parameter register")
    preds = predict_many(family, decode_all(grid), dataset.x)
    correct = preds == dataset.y[None, :].astype(np.int8)
    _require_accuracy_clear(state)
    view = state.view()
    inv = 1.0 / math.sqrt(2.0)
    a0 = view[:, :, 0, :].copy()
    view[:, :, 0, :] = inv * (a0 + view[:, :, 1, :])
    view[:, :, 1, :] = inv * (a0 - view[:, :, 1, :])
    for point in range(m):
        phi = np.where(correct[:, point], -delta, delta)
        c = np.cos(phi)[:, None, None]
        s = np.sin(phi)[:, None, None]
        a0 = view[:, :, 0, :].copy()
        a1 = view[:, :, 1, :]
        view[:, :, 0, :] = c * a0 - s * a1
        view[:, :, 1, :] = s * a0 + c * a1
    return state


@dataclass(frozen=True)
class PostselectionReport:
    acceptance_probability: float
    expected_repetitions: float


def postselect_accuracy_zero(state: EnsembleState) -> tuple[EnsembleState, PostselectionReport]:
    """Project onto accuracy = |0> and renormalize."""
    view = state.view()
    p_acc = float(np.sum(np.abs(view[:, :, 0, :]) ** 2))
    if p_acc <= _ATOL:
        raise PostselectionImpossibleError("accuracy-|0> branch has no mass")
    view[:, :, 1, :] = 0.0
    view[:, :, 0, :] /= math.sqrt(p_acc)
    return state, PostselectionReport(p_acc, 1.0 / p_acc)


def apply_classifier(
    state: EnsembleState, family: ModelFamily, grid: ParameterGrid, x: np.ndarray
) -> EnsembleState:
    """Flip the output qubit on every branch whose model labels x as +1."""
    if grid.total_bits != state.layout.parameter_bits:
        raise ValueError("grid size does not match the parameter register")
    _require_output_clear(state)
    preds = predict_many(family, decode_all(grid), np.atleast_1d(x))[:, 0]
    flip = preds == 1
    view = state.view()
    view[flip, 1, :, :] = view[flip, 0, :, :]
    view[flip, 0, :, :] = 0.0
    return state


def measure_label_distribution(state: EnsembleState) -> tuple[float, float]:
    """(p_minus, p_plus): output-qubit Born probabilities for labels -1, +1."""
    probs = np.abs(state.view()) ** 2
    total = float(probs.sum())
    if not math.isclose(total, 1.0, abs_tol=1e-9):
        raise StateError("state is not normalized")
    p_minus = float(probs[:, 0, :, :].sum()) / total
    return p_minus, 1.0 - p_minus


def expectation_sigma_z(state: EnsembleState) -> float:
    """Z expectation of the output qubit, p(-1) - p(+1) under the label
    encoding above.  The complementary single-label mass is available
    directly from measure_label_distribution."""
    p_minus, p_plus = measure_label_distribution(state)
    return p_minus - p_plus


def sample_measurements(state: EnsembleState, shots: int, seed: int) -> dict[int, int]:
    """Counts of simulated output-qubit measurements, keyed by label."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    _, p_plus = measure_label_distribution(state)
    u = prng.uniforms(prng.derive_key(seed, 0), shots)
    plus = int(np.count_nonzero(u < p_plus))
    return {-1: shots - plus, 1: plus}


@dataclass(frozen=True)
class GroverReport:
    marked_count: int
    model_count: int
    iterations: int
    iteration_scale: float
    marked_probability: float
    closed_form_probability: float


def grover_amplify_counts(
    correct_counts: np.ndarray,
    dataset_size: int,
    iterations: int | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> tuple[EnsembleState, GroverReport]:
    """Amplitude amplification of the better-than-chance models.

    The count register is loaded with each model's correct count; the
    oracle flips the phase of every basis state whose count register
    value v satisfies 2v > M (for M+1 a power of two this is exactly the
    register's top qubit).  Diffusion reflects about the prepared state.
    The default iteration count is floor(pi/4 * sqrt(E/K)).
    """
    counts = np.asarray(correct_counts, dtype=np.int64)
    m = int(dataset_size)
    if counts.ndim != 1 or counts.size < 1 or (1 << int(np.log2(counts.size))) != counts.size:
        raise ValueError("correct_counts must have power-of-two length")
    if counts.min() < 0 or counts.max() > m:
        raise ValueError("counts outside 0..dataset_size")
    param_bits = int(np.log2(counts.size))
    layout = RegisterLayout(param_bits, count_bits_for(m), qubit_cap)
    state = EnsembleState(layout)
    view = state.view()
    e = layout.model_count
    view[np.arange(e), 0, 0, counts] = 1.0 / math.sqrt(e)
    psi0 = state.amplitudes.copy()

    marked_values = 2 * np.arange(layout.count_values) > m
    marked_probability = float(np.sum(np.abs(view[:, :, :, marked_values]) ** 2))
    k = int(round(e * marked_probability))
    if k == 0:
        raise ValueError("no model is better than chance; nothing to amplify")
    if iterations is None:
        iterations = math.floor(math.pi / 4.0 * math.sqrt(e / k))
    if iterations < 0:
        raise ValueError("iterations must be non-negative")

    for _ in range(iterations):
        view[:, :, :, marked_values] *= -1.0
        overlap = np.vdot(psi0, state.amplitudes)
        state.amplitudes[:] = 2.0 * overlap * psi0 - state.amplitudes

    amplified = float(np.sum(np.abs(view[:, :, :, marked_values]) ** 2))
    closed = math.sin((2 * iterations + 1) * math.asin(math.sqrt(k / e))) ** 2
    report = GroverReport(k, e, iterations, math.sqrt(e / k), amplified, closed)
    return state, report


def grover_accurate_filter(
    family: ModelFamily,
    grid: ParameterGrid,
    dataset: Dataset,
    iterations: int | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> tuple[EnsembleState, GroverReport]:
    """grover_amplify_counts driven by a grid's actual correct counts."""
    counts = grid_correct_counts(family, grid, dataset)
    return grover_amplify_counts(counts, len(dataset), iterations, qubit_cap)
