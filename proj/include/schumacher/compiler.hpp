#pragma once

#include "schumacher/circuit.hpp"
#include "schumacher/programs.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace schumacher {

enum class Mode { Standard, SpaceEfficient };
enum class PhaseMode { Plain, Modified };

std::string_view mode_name(Mode m);
std::string_view phase_name(PhaseMode p);
Mode parse_mode(std::string_view s);
PhaseMode parse_phase(std::string_view s);

struct CompileOptions {
    int n = 4;
    Mode mode = Mode::Standard;
    PhaseMode phase = PhaseMode::Plain;
    bool lower_two_bit = false;
};

constexpr int kMaxCompileN = 64;

enum class StatementKind {
    UnconditionalAdd,
    BitConditionalAdd,
    InequalityConditionalAdd,
    EqualityBitConditionalAdd,
    EqualityInequalityFlip
};

std::string_view statement_kind_name(StatementKind k);

// Throws std::invalid_argument for statements outside the five shapes.
StatementKind classify(const Statement& s);

// Constant operand truncated to a register width, bit 0 first.
struct BitConstant {
    std::vector<bool> bits;

    static BitConstant from_int(std::int64_t v, int width);
    static BitConstant all_ones(int width);
    int width() const { return static_cast<int>(bits.size()); }
    bool operator[](int i) const { return bits[static_cast<std::size_t>(i)]; }
};

// Contiguous register view, bit 0 at `lo`.
struct Bits {
    Qubit lo = 0;
    int width = 0;

    Qubit operator[](int i) const { return lo + static_cast<Qubit>(i); }
    Bits low(int w) const { return {lo, w}; }
};

struct Workspace {
    Qubit c_lo = 0;
    int c_size = 0;
    Qubit d_lo = 0;
    int d_size = 0;
};

// Carry/chain bank sizes (C, D) that the subroutines need at width w.
std::pair<int, int> bank_demand(Mode mode, int w);

int s_register_width(int n);

class Emitter {
public:
    Emitter(Circuit& out, Workspace ws, Mode mode, PhaseMode phase);

    // X <- X + b*k mod 2^width; unconditional when b is empty.
    void conditional_add(const BitConstant& k, Bits x, std::optional<Qubit> b);
    // b ^= (X == k)
    void test_equality(const BitConstant& k, Bits x, Qubit b);
    // b ^= (X > k), two's complement when is_signed
    void test_greater_than(const BitConstant& k, Bits x, Qubit b, bool is_signed);

    // t ^= a & b at a compute (or matching uncompute) site.
    void flag_and(Qubit a, Qubit b, Qubit t, bool compute);

    // Emits into a scratch circuit over the same qubits.
    Circuit capture(const std::function<void(Emitter&)>& body) const;

    Circuit& out() { return out_; }
    Mode mode() const { return mode_; }
    PhaseMode phase() const { return phase_; }

private:
    enum class Site { Plain, Compute, Uncompute };

    void and_gate(Qubit a, bool neg_a, Qubit b, bool neg_b, Qubit t, Site site);
    void maj(bool l, Qubit x, Qubit c, Qubit t, Site site);
    void literal_copy(Qubit x, bool k, Qubit t);
    void add_bit(bool k, Qubit x, std::optional<Qubit> b);
    void add_carry(Qubit carry, Qubit x, std::optional<Qubit> b);

    void add_standard(const BitConstant& k, Bits x, std::optional<Qubit> b);
    void add_blocked(const BitConstant& k, Bits x, std::optional<Qubit> b);
    void compare_standard(const BitConstant& k, Bits x, Qubit b, bool greater, bool is_signed);
    void compare_blocked(const BitConstant& k, Bits x, Qubit b, bool greater, bool is_signed);

    Qubit C(int i) const;
    Qubit D(int j) const;

    Circuit& out_;
    Workspace ws_;
    Mode mode_;
    PhaseMode phase_;
};

// Registers addressed by statements: X, optional Y, S, two flags, and the pool.
struct Machine {
    Circuit circuit;
    std::map<Reg, Register> regs;
    Qubit flag0 = 0;
    Qubit flag1 = 0;
    Workspace ws;
};

// Deterministic layout for a program of block length n.
Machine make_machine(int n, Mode mode);

// Layout with caller-chosen registers (each name -> width, signedness) used by
// statement-level tests.
Machine make_custom_machine(const std::vector<std::pair<Reg, std::pair<int, bool>>>& regs, Mode mode);

void emit_statement(Machine& m, const Statement& s, Mode mode, PhaseMode phase);

Circuit compile(ProgramId p, const CompileOptions& opts);
Circuit compile_statements(Machine m, const std::vector<Statement>& prog, Mode mode, PhaseMode phase);

enum class Subroutine { ConditionalAdd, UnconditionalAdd, TestEquality, TestGreaterThan };

// Stand-alone subroutine over registers X (width of k), B, and the workspace banks.
Circuit compile_subroutine(Subroutine s, const BitConstant& k, Mode mode, PhaseMode phase,
                           bool is_signed = true);

// Replaces every three-qubit gate with a one/two-qubit template: 8 one-qubit + 8 XOR
// for plain gates, 4 + 3 for phase-modified gates.
Circuit lower_two_bit(const Circuit& c);

} // namespace schumacher
