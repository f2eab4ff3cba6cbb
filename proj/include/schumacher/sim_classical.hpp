#pragma once

#include "schumacher/circuit.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace schumacher {

struct MachineState {
    std::vector<std::uint8_t> bits;
    int sign = 1;

    explicit MachineState(Qubit q = 0) : bits(q, 0) {}
    bool operator[](Qubit i) const { return bits[i] != 0; }
    friend bool operator==(const MachineState&, const MachineState&) = default;
};

// Basis-state update; throws std::invalid_argument on one-qubit unitaries.
void apply_gate(MachineState& s, const Gate& g);
MachineState run(const Circuit& c, MachineState input);

// Register value, two's complement for signed registers wider than one bit.
std::int64_t read_register(const MachineState& s, const Register& r);
std::uint64_t read_bits(const MachineState& s, const Register& r);
void write_register(MachineState& s, const Register& r, std::uint64_t value);

struct Counterexample {
    std::uint64_t input = 0;
    std::uint64_t expected = 0;
    std::uint64_t got = 0;
    bool dirty = false;
    int sign = 1;
};

struct VerifyReport {
    std::uint64_t total = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t dirty = 0;
    std::uint64_t bad_sign = 0;
    std::vector<Counterexample> first; // at most kMaxCounterexamples, in input order

    static constexpr std::size_t kMaxCounterexamples = 10;
    bool ok() const { return mismatches == 0 && dirty == 0 && bad_sign == 0; }
};

using BasisMap = std::function<std::uint64_t(std::uint64_t)>;

// Runs every n-bit value through register `reg` (all other qubits 0) and checks
// that reg ends at expect(x) mod 2^width, every other qubit returns to 0, and sign = +1.
VerifyReport exhaustive_verify(const Circuit& c, const BasisMap& expect, int n, const std::string& reg = "X");
VerifyReport exhaustive_verify_serial(const Circuit& c, const BasisMap& expect, int n,
                                      const std::string& reg = "X");

std::string report_json(const VerifyReport& r);

} // namespace schumacher
