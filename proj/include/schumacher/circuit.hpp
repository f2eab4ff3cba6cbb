#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace schumacher {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t {
    Not,          // t ^= 1
    Xor,          // t ^= c1
    XorNeg,       // t ^= !c1
    Toffoli,      // t ^= lit(c1) & lit(c2)
    OrToffoli,    // t ^= c1 | c2
    PhaseToffoli, // Toffoli permutation, -1 when (lit(c1), lit(c2), t) = (1, 0, 0)
    PhaseOr,      // OR permutation, -1 when (c1, c2, t) = (0, 1, 0) [fwd] or (0, 1, 1) [rev]
    OneQubit      // fixed single-qubit unitary; Rev applies its adjoint
};

// Control literal pattern: c1 and c2 plain, c1 negated, both negated.
enum class Polarity : std::uint8_t { PP, NP, NN };

enum class Direction : std::uint8_t { Fwd, Rev };

// Single-qubit unitaries used by the two-bit templates. Compound names are
// matrix products, so TH = T*H applies H first.
enum class OneQubitOp : std::uint8_t { H, T, TH, XH, RY, RY_X, X_RY };

struct Gate {
    GateKind kind = GateKind::Not;
    Polarity pol = Polarity::PP;
    Direction dir = Direction::Fwd;
    OneQubitOp op = OneQubitOp::H;
    Qubit target = 0;
    Qubit c1 = 0;
    Qubit c2 = 0;

    static Gate not_gate(Qubit t);
    static Gate xor_gate(Qubit c, Qubit t);
    static Gate xor_neg(Qubit c, Qubit t);
    static Gate toffoli(Qubit c1, Qubit c2, Qubit t, Polarity pol = Polarity::PP);
    static Gate or_toffoli(Qubit c1, Qubit c2, Qubit t);
    static Gate phase_toffoli(Qubit c1, Qubit c2, Qubit t, Direction d, Polarity pol = Polarity::PP);
    static Gate phase_or(Qubit c1, Qubit c2, Qubit t, Direction d);
    static Gate one_qubit(OneQubitOp op, Qubit q, bool adjoint = false);

    int controls() const;
    bool classical() const { return kind != GateKind::OneQubit; }
    bool three_qubit() const { return controls() == 2; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

bool negated_first(Polarity p);
bool negated_second(Polarity p);

struct Register {
    std::string name;
    Qubit lo = 0;
    Qubit hi = 0;
    bool is_signed = false;
    bool init0 = false;
    bool final0 = false;

    std::uint32_t size() const { return hi - lo; }
    friend bool operator==(const Register&, const Register&) = default;
};

struct RegisterLayout {
    std::vector<Register> regs;

    const Register* find(std::string_view name) const;
    const Register& at(std::string_view name) const;
    Qubit total() const;
    friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

// Marker placed before the gate at `position` (== gates.size() for trailing markers).
struct SpanMarker {
    std::size_t position = 0;
    bool begin = true;
    std::string name;
    friend bool operator==(const SpanMarker&, const SpanMarker&) = default;
};

struct Circuit {
    Qubit qubit_count = 0;
    RegisterLayout layout;
    std::vector<Gate> gates;
    std::vector<SpanMarker> spans;

    void add(const Gate& g) { gates.push_back(g); }
    void begin_span(std::string name);
    void end_span(std::string name);
    // Appends another circuit's gates and markers (qubit sets must agree).
    void append(const Circuit& other);

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

Gate inverse_gate(Gate g);
Circuit invert_circuit(const Circuit& c);

std::vector<std::string> validate(const Circuit& c);

} // namespace schumacher
