#pragma once

#include "schumacher/compiler.hpp"

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace schumacher {

using Complex = std::complex<double>;

struct Ensemble {
    std::vector<std::pair<Complex, Complex>> states;
    std::vector<double> probs;

    void validate() const;
};

// |0> and (|0> + |1>)/sqrt2, each with probability 1/2.
Ensemble example_ensemble();

struct DensityMatrix2 {
    // Row-major: rho00, rho01, rho10, rho11.
    std::array<Complex, 4> m{};

    Complex operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }
};

DensityMatrix2 density_from_ensemble(const Ensemble& e);

struct Eigen2 {
    double lambda_max = 1.0;
    double lambda_min = 0.0;
    double theta = 0.0; // |0'> = cos(theta)|0> + e^{i phi} sin(theta)|1>
    double phi = 0.0;

    // Components of a single-qubit state in the (|0'>, |1'>) basis.
    std::pair<Complex, Complex> to_eigenbasis(const std::pair<Complex, Complex>& psi) const;
    std::pair<Complex, Complex> from_eigenbasis(const std::pair<Complex, Complex>& c) const;
};

Eigen2 diagonalize(const DensityMatrix2& rho);

double vn_entropy(const DensityMatrix2& rho);
double shannon_entropy(const std::vector<double>& p);

// Probability mass of eigenbasis strings whose fraction of 1's is below H_VN.
double typical_weight(const Ensemble& e, int n);

enum class Engine { Permutation, Circuit };

std::string_view engine_name(Engine e);

struct FidelityResult {
    int n = 0;
    int lambda_n = 0;
    double expected_fidelity = 0.0;
    // Source-averaged probability that every discarded qubit reads 0.
    double postselected = 0.0;
    std::string method;
};

struct FidelityOptions {
    Engine engine = Engine::Permutation;
    Mode mode = Mode::Standard;
    PhaseMode phase = PhaseMode::Plain;
};

constexpr int kMaxFidelityN = 10;

FidelityResult expected_fidelity(const Ensemble& e, int n, int lambda, const FidelityOptions& opts = {});
FidelityResult expected_fidelity_serial(const Ensemble& e, int n, int lambda, const FidelityOptions& opts = {});
// All kept counts 1..n from a single encoding pass per string.
std::vector<FidelityResult> fidelity_sweep(const Ensemble& e, int n, const FidelityOptions& opts = {});
std::vector<FidelityResult> fidelity_sweep_serial(const Ensemble& e, int n, const FidelityOptions& opts = {});

} // namespace schumacher
