#pragma once

#include "schumacher/circuit.hpp"
#include "schumacher/compiler.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace schumacher {

struct ResourceReport {
    std::map<std::string, std::uint64_t> by_kind;
    std::uint64_t total = 0;
    std::uint64_t one_qubit = 0;
    std::uint64_t two_qubit = 0;
    std::uint64_t three_qubit = 0;
    Qubit qubit_count = 0;
    // Each gate counted once, under its innermost span ("" when outside every span).
    std::map<std::string, std::uint64_t> exclusive;
    // Each gate counted under every enclosing span name.
    std::map<std::string, std::uint64_t> inclusive;
    std::optional<CompileOptions> options;
};

std::string gate_kind_name(const Gate& g);

ResourceReport count(const Circuit& c);

std::string report_json(const ResourceReport& r);

struct SweepPoint {
    int n = 0;
    std::uint64_t total = 0;
    Qubit qubits = 0;
};

std::string sweep_csv(const std::vector<SweepPoint>& pts);

// Least-squares fit of count = a n^d + b n^(d-1) + ..., keeping as many terms as
// there are distinct nodes (at most d+1). Returns a.
double fit_leading(const std::vector<std::pair<double, double>>& nodes, int degree);

} // namespace schumacher
