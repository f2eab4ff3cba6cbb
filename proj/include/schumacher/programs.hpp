#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schumacher {

enum class ProgramId { FirstTry, TryInverse, FinalSchumacher, FinalSchumacherInverse };

std::string_view program_name(ProgramId p);
ProgramId parse_program(std::string_view name);

enum class Reg : std::uint8_t { X, Y, S };

struct Condition {
    enum class Kind : std::uint8_t {
        BitSet,       // reg bit `index` is 1
        Equals,       // reg == value
        AtMost,       // reg <= value
        AtLeast,      // reg >= value
        NonNegative,  // sign bit clear
        TruncAtLeast  // low `index` bits, unsigned, >= value; index < 0 means the whole signed register
    };
    Kind kind = Kind::BitSet;
    Reg reg = Reg::X;
    int index = 0;
    std::int64_t value = 0;

    friend bool operator==(const Condition&, const Condition&) = default;
};

struct Action {
    enum class Kind : std::uint8_t { Add, FlipBit };
    Kind kind = Kind::Add;
    Reg reg = Reg::X;
    std::int64_t amount = 0;
    int bit = 0;

    friend bool operator==(const Action&, const Action&) = default;
};

struct Statement {
    std::string id;
    std::vector<Condition> guards;
    Action action;

    Statement inverse() const;
    std::string describe() const;
};

struct RegisterFile {
    int n = 0;
    std::int64_t X = 0;
    std::int64_t Y = 0;
    std::int64_t S = 0;

    friend bool operator==(const RegisterFile&, const RegisterFile&) = default;
};

struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Largest n the integer interpreter accepts (X keeps n+1 bits inside int64).
constexpr int kMaxInterpreterN = 62;

std::uint64_t trunc(std::int64_t x, int j);

std::vector<Statement> build_program(ProgramId p, int n);

// The loop appended to FIRST_TRY to return S to zero.
std::vector<Statement> s_clearing_loop(int n);

bool guard_holds(const Statement& s, const RegisterFile& r);
void apply_statement(const Statement& s, RegisterFile& r);

using TraceSink = std::function<void(std::size_t step, const Statement&, const RegisterFile&)>;

// Executes statements in order, checking register ranges after every step.
RegisterFile execute(const std::vector<Statement>& program, RegisterFile r,
                     const TraceSink& trace = {});

// Executes program p and checks its declared finalized registers.
RegisterFile run_program(ProgramId p, RegisterFile r, const TraceSink& trace = {});

// Runs the inverse statements in reverse order.
RegisterFile execute_reversed(const std::vector<Statement>& program, RegisterFile r);

void write_trace_line(std::ostream& os, std::size_t step, const Statement& s, const RegisterFile& r);

// TRY_INVERSE from (0, y, 0) never has X and Y sharing a set bit, and the merged
// register of FINAL_SCHUMACHER_INVERSE equals X | Y after every statement.
bool check_disjointness_trace(int n, std::uint64_t y);

} // namespace schumacher
