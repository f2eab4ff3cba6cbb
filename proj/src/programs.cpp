#include "schumacher/programs.hpp"

#include "schumacher/combinatorics.hpp"

#include <ostream>
#include <sstream>

namespace schumacher {

namespace {

std::int64_t C(int n, int k) { return static_cast<std::int64_t>(binom(n, k)); }

Condition bit_set(Reg r, int bit) { return {Condition::Kind::BitSet, r, bit, 0}; }
Condition equals(Reg r, std::int64_t v) { return {Condition::Kind::Equals, r, 0, v}; }
Condition at_most(Reg r, std::int64_t v) { return {Condition::Kind::AtMost, r, 0, v}; }
Condition at_least(Reg r, std::int64_t v) { return {Condition::Kind::AtLeast, r, 0, v}; }
Condition non_negative(Reg r) { return {Condition::Kind::NonNegative, r, 0, 0}; }
Condition trunc_at_least(Reg r, int width, std::int64_t v)
{
    return {Condition::Kind::TruncAtLeast, r, width, v};
}

Action add(Reg r, std::int64_t k) { return {Action::Kind::Add, r, k, 0}; }
Action flip(Reg r, int bit) { return {Action::Kind::FlipBit, r, 0, bit}; }

std::string tag(const char* prefix, int v, const char* suffix)
{
    return std::string(prefix) + std::to_string(v) + suffix;
}

std::string tag(const char* p1, int v1, const char* p2, int v2, const char* suffix)
{
    return std::string(p1) + std::to_string(v1) + p2 + std::to_string(v2) + suffix;
}

const char* reg_name(Reg r)
{
    switch (r) {
    case Reg::X: return "X";
    case Reg::Y: return "Y";
    case Reg::S: return "S";
    }
    return "?";
}

std::int64_t& slot(RegisterFile& f, Reg r)
{
    switch (r) {
    case Reg::X: return f.X;
    case Reg::Y: return f.Y;
    default: return f.S;
    }
}

std::int64_t value_of(const RegisterFile& f, Reg r)
{
    return slot(const_cast<RegisterFile&>(f), r);
}

void check_n(int n)
{
    if (n < 1 || n > kMaxInterpreterN)
        throw std::out_of_range("interpreter supports 1 <= n <= 62");
}

// Shared inverse-program body; `merged` selects the single-register variant.
std::vector<Statement> inverse_body(int n, bool merged)
{
    const Reg R = merged ? Reg::X : Reg::Y;
    std::vector<Statement> prog;
    for (int m = 0; m <= n; ++m) {
        prog.push_back({tag("m", m, ".sub"), {}, add(R, -C(n, m))});
        prog.push_back({tag("m", m, ".inc"), {non_negative(R)}, add(Reg::S, 1)});
    }
    for (int m = 0; m <= n; ++m)
        prog.push_back({tag("r", m, ".add"), {at_most(Reg::S, m)}, add(R, C(n, m))});
    for (int p = 0; p <= n - 1; ++p) {
        const int j = n - p - 1;
        for (int i = 0; i <= n - p; ++i) {
            Condition cmp = merged ? trunc_at_least(Reg::X, j, C(j, i))
                                   : trunc_at_least(Reg::Y, -1, C(j, i));
            prog.push_back({tag("p", p, ".i", i, ".flip"), {equals(Reg::S, i), cmp}, flip(Reg::X, j)});
            prog.push_back({tag("p", p, ".i", i, ".sub"), {equals(Reg::S, i), bit_set(Reg::X, j)},
                            add(R, -C(j, i))});
        }
        prog.push_back({tag("p", p, ".dec"), {bit_set(Reg::X, j)}, add(Reg::S, -1)});
    }
    return prog;
}

std::vector<Statement> first_try(int n)
{
    std::vector<Statement> prog;
    prog.push_back({"j0.inc", {bit_set(Reg::X, 0)}, add(Reg::S, 1)});
    for (int j = 1; j <= n - 1; ++j) {
        prog.push_back({tag("j", j, ".inc"), {bit_set(Reg::X, j)}, add(Reg::S, 1)});
        for (int m = 0; m <= j + 1; ++m)
            prog.push_back({tag("j", j, ".m", m, ".add"), {bit_set(Reg::X, j), equals(Reg::S, m)},
                            add(Reg::Y, C(j, m))});
    }
    for (int i = 0; i <= n - 1; ++i)
        prog.push_back({tag("i", i, ".add"), {at_least(Reg::S, i + 1)}, add(Reg::Y, C(n, i))});
    return prog;
}

std::vector<Statement> final_forward(int n)
{
    std::vector<Statement> prog;
    for (int p = n - 1; p >= 0; --p) {
        const int j = n - p - 1;
        prog.push_back({tag("p", p, ".inc"), {bit_set(Reg::X, j)}, add(Reg::S, 1)});
        for (int i = n - p; i >= 0; --i) {
            prog.push_back({tag("p", p, ".i", i, ".add"), {equals(Reg::S, i), bit_set(Reg::X, j)},
                            add(Reg::X, C(j, i))});
            prog.push_back({tag("p", p, ".i", i, ".flip"),
                            {equals(Reg::S, i), trunc_at_least(Reg::X, j, C(j, i))}, flip(Reg::X, j)});
        }
    }
    for (int m = n; m >= 0; --m)
        prog.push_back({tag("r", m, ".sub"), {at_most(Reg::S, m)}, add(Reg::X, -C(n, m))});
    for (int m = n; m >= 0; --m) {
        prog.push_back({tag("m", m, ".dec"), {non_negative(Reg::X)}, add(Reg::S, -1)});
        prog.push_back({tag("m", m, ".add"), {}, add(Reg::X, C(n, m))});
    }
    return prog;
}

void check_ranges(const RegisterFile& r, const Statement& s)
{
    const std::int64_t lim = std::int64_t{1} << r.n;
    auto bad = [&](const char* what) {
        throw IntegrityError(std::string(what) + " out of range after statement " + s.id);
    };
    if (r.S < 0 || r.S > r.n)
        bad("S");
    if (r.X < -lim || r.X >= lim)
        bad("X");
    if (r.Y < -lim || r.Y >= lim)
        bad("Y");
}

} // namespace

std::string_view program_name(ProgramId p)
{
    switch (p) {
    case ProgramId::FirstTry: return "first_try";
    case ProgramId::TryInverse: return "try_inverse";
    case ProgramId::FinalSchumacher: return "final_schumacher";
    case ProgramId::FinalSchumacherInverse: return "final_schumacher_inverse";
    }
    return "?";
}

ProgramId parse_program(std::string_view name)
{
    for (ProgramId p : {ProgramId::FirstTry, ProgramId::TryInverse, ProgramId::FinalSchumacher,
                        ProgramId::FinalSchumacherInverse})
        if (program_name(p) == name)
            return p;
    if (name == "forward")
        return ProgramId::FinalSchumacher;
    if (name == "inverse")
        return ProgramId::FinalSchumacherInverse;
    throw std::invalid_argument("unknown program: " + std::string(name));
}

Statement Statement::inverse() const
{
    Statement s = *this;
    s.id += "'";
    if (s.action.kind == Action::Kind::Add)
        s.action.amount = -s.action.amount;
    return s;
}

std::string Statement::describe() const
{
    std::ostringstream os;
    if (!guards.empty()) {
        os << "if ";
        for (std::size_t g = 0; g < guards.size(); ++g) {
            const Condition& c = guards[g];
            if (g)
                os << " and ";
            const char* r = reg_name(c.reg);
            switch (c.kind) {
            case Condition::Kind::BitSet: os << r << '_' << c.index << "=1"; break;
            case Condition::Kind::Equals: os << r << '=' << c.value; break;
            case Condition::Kind::AtMost: os << r << "<=" << c.value; break;
            case Condition::Kind::AtLeast: os << r << ">=" << c.value; break;
            case Condition::Kind::NonNegative: os << r << ">=0"; break;
            case Condition::Kind::TruncAtLeast:
                if (c.index < 0)
                    os << r << ">=" << c.value;
                else
                    os << "TRUNC_" << c.index << '(' << r << ")>=" << c.value;
                break;
            }
        }
        os << " then ";
    }
    const char* r = reg_name(action.reg);
    if (action.kind == Action::Kind::FlipBit)
        os << r << '_' << action.bit << " ^= 1";
    else if (action.amount >= 0)
        os << r << " += " << action.amount;
    else
        os << r << " -= " << -action.amount;
    return os.str();
}

std::uint64_t trunc(std::int64_t x, int j)
{
    if (j <= 0)
        return 0;
    const auto u = static_cast<std::uint64_t>(x);
    return j >= 64 ? u : (u & ((std::uint64_t{1} << j) - 1));
}

std::vector<Statement> build_program(ProgramId p, int n)
{
    // Statement lists are built up to n = 64 for compilation; execution stops at 62.
    if (n < 1 || n > 64)
        throw std::out_of_range("programs are defined for 1 <= n <= 64");
    switch (p) {
    case ProgramId::FirstTry: return first_try(n);
    case ProgramId::TryInverse: return inverse_body(n, false);
    case ProgramId::FinalSchumacherInverse: return inverse_body(n, true);
    case ProgramId::FinalSchumacher: return final_forward(n);
    }
    throw std::invalid_argument("unknown program");
}

std::vector<Statement> s_clearing_loop(int n)
{
    check_n(n);
    std::vector<Statement> prog;
    for (int j = 0; j <= n - 1; ++j)
        prog.push_back({tag("c", j, ".dec"), {bit_set(Reg::X, j)}, add(Reg::S, -1)});
    return prog;
}

bool guard_holds(const Statement& s, const RegisterFile& r)
{
    for (const Condition& c : s.guards) {
        const std::int64_t v = value_of(r, c.reg);
        bool ok = false;
        switch (c.kind) {
        case Condition::Kind::BitSet: ok = ((static_cast<std::uint64_t>(v) >> c.index) & 1u) != 0; break;
        case Condition::Kind::Equals: ok = v == c.value; break;
        case Condition::Kind::AtMost: ok = v <= c.value; break;
        case Condition::Kind::AtLeast: ok = v >= c.value; break;
        case Condition::Kind::NonNegative: ok = v >= 0; break;
        case Condition::Kind::TruncAtLeast:
            ok = c.index < 0 ? v >= c.value
                             : c.value <= 0 || trunc(v, c.index) >= static_cast<std::uint64_t>(c.value);
            break;
        }
        if (!ok)
            return false;
    }
    return true;
}

void apply_statement(const Statement& s, RegisterFile& r)
{
    if (!guard_holds(s, r))
        return;
    std::int64_t& v = slot(r, s.action.reg);
    if (s.action.kind == Action::Kind::FlipBit)
        v ^= std::int64_t{1} << s.action.bit;
    else
        v += s.action.amount;
}

RegisterFile execute(const std::vector<Statement>& program, RegisterFile r, const TraceSink& trace)
{
    check_n(r.n);
    for (std::size_t step = 0; step < program.size(); ++step) {
        apply_statement(program[step], r);
        check_ranges(r, program[step]);
        if (trace)
            trace(step, program[step], r);
    }
    return r;
}

RegisterFile run_program(ProgramId p, RegisterFile r, const TraceSink& trace)
{
    RegisterFile out = execute(build_program(p, r.n), r, trace);
    auto require_zero = [&](std::int64_t v, const char* name) {
        if (v != 0)
            throw IntegrityError(std::string(program_name(p)) + ": finalized register " + name +
                                 " is nonzero");
    };
    if (p != ProgramId::FirstTry)
        require_zero(out.S, "S");
    if (p == ProgramId::TryInverse)
        require_zero(out.Y, "Y");
    return out;
}

RegisterFile execute_reversed(const std::vector<Statement>& program, RegisterFile r)
{
    for (auto it = program.rbegin(); it != program.rend(); ++it) {
        Statement inv = it->inverse();
        apply_statement(inv, r);
        check_ranges(r, inv);
    }
    return r;
}

void write_trace_line(std::ostream& os, std::size_t step, const Statement& s, const RegisterFile& r)
{
    os << step << ", " << s.id << ", " << r.X << ", " << r.Y << ", " << r.S << '\n';
}

bool check_disjointness_trace(int n, std::uint64_t y)
{
    const auto try_prog = build_program(ProgramId::TryInverse, n);
    const auto merged_prog = build_program(ProgramId::FinalSchumacherInverse, n);
    RegisterFile a{n, 0, static_cast<std::int64_t>(y), 0};
    RegisterFile b{n, static_cast<std::int64_t>(y), 0, 0};
    for (std::size_t step = 0; step < try_prog.size(); ++step) {
        apply_statement(try_prog[step], a);
        apply_statement(merged_prog[step], b);
        if ((a.X & a.Y) != 0)
            return false;
        if ((a.X | a.Y) != b.X || a.S != b.S)
            return false;
    }
    return true;
}

} // namespace schumacher
