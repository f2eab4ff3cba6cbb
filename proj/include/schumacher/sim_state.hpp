#pragma once

#include "schumacher/circuit.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace schumacher {

using Amplitude = std::complex<double>;

constexpr int kMaxStateQubits = 24;

struct StateVector {
    int q = 0;
    std::vector<Amplitude> amp;

    StateVector() = default;
    explicit StateVector(int qubits);
    static StateVector basis(int qubits, std::uint64_t index);

    std::size_t dim() const { return amp.size(); }
    double norm() const;
};

// Factor i sits on qubit i; padding qubits follow in |0>.
StateVector product_state(const std::vector<std::pair<Amplitude, Amplitude>>& factors, int padding_zeros = 0);

// Row-major 2x2 matrix; adjoint when `adjoint` is set.
std::array<Amplitude, 4> one_qubit_matrix(OneQubitOp op, bool adjoint = false);

// Index-sweeping kernels (OpenMP over amplitude blocks).
void apply_gate(StateVector& v, const Gate& g);
StateVector apply_circuit(StateVector v, const Circuit& c);

// Reference: visits every amplitude and tests the gate condition directly.
void apply_gate_serial(StateVector& v, const Gate& g);
StateVector apply_circuit_serial(StateVector v, const Circuit& c);

// Probability that all listed qubits read 0, and the renormalized projection.
// Throws std::domain_error on zero probability.
std::pair<double, StateVector> project_and_renormalize(const StateVector& v, const std::vector<Qubit>& qubits);

double max_abs_diff(const StateVector& a, const StateVector& b);

} // namespace schumacher
