#include "schumacher/sim_classical.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace schumacher {

void apply_gate(MachineState& s, const Gate& g)
{
    auto bit = [&](Qubit q) { return s.bits[q] != 0; };
    auto lit1 = [&] { return bit(g.c1) != negated_first(g.pol); };
    auto lit2 = [&] { return bit(g.c2) != negated_second(g.pol); };
    std::uint8_t& t = s.bits[g.target];
    switch (g.kind) {
    case GateKind::Not: t ^= 1; break;
    case GateKind::Xor: t ^= static_cast<std::uint8_t>(bit(g.c1)); break;
    case GateKind::XorNeg: t ^= static_cast<std::uint8_t>(!bit(g.c1)); break;
    case GateKind::Toffoli: t ^= static_cast<std::uint8_t>(lit1() && lit2()); break;
    case GateKind::OrToffoli: t ^= static_cast<std::uint8_t>(bit(g.c1) || bit(g.c2)); break;
    case GateKind::PhaseToffoli: {
        const bool a = lit1(), b = lit2();
        if (a && !b && !t)
            s.sign = -s.sign;
        t ^= static_cast<std::uint8_t>(a && b);
        break;
    }
    case GateKind::PhaseOr: {
        const bool a = bit(g.c1), b = bit(g.c2);
        const bool want = g.dir == Direction::Rev;
        if (!a && b && (t != 0) == want)
            s.sign = -s.sign;
        t ^= static_cast<std::uint8_t>(a || b);
        break;
    }
    case GateKind::OneQubit:
        throw std::invalid_argument("basis simulator cannot apply a one-qubit unitary");
    }
}

MachineState run(const Circuit& c, MachineState input)
{
    if (input.bits.size() != c.qubit_count)
        throw std::invalid_argument("input length differs from circuit qubit count");
    for (const Gate& g : c.gates)
        apply_gate(input, g);
    return input;
}

std::uint64_t read_bits(const MachineState& s, const Register& r)
{
    std::uint64_t v = 0;
    for (Qubit q = r.lo; q < r.hi && q - r.lo < 64; ++q)
        v |= static_cast<std::uint64_t>(s.bits[q] & 1u) << (q - r.lo);
    return v;
}

std::int64_t read_register(const MachineState& s, const Register& r)
{
    const std::uint64_t v = read_bits(s, r);
    const std::uint32_t w = r.size();
    if (r.is_signed && w > 1 && w < 64 && s.bits[r.hi - 1])
        return static_cast<std::int64_t>(v | (~std::uint64_t{0} << w));
    return static_cast<std::int64_t>(v);
}

void write_register(MachineState& s, const Register& r, std::uint64_t value)
{
    for (Qubit q = r.lo; q < r.hi; ++q)
        s.bits[q] = q - r.lo < 64 ? static_cast<std::uint8_t>((value >> (q - r.lo)) & 1u) : 0;
}

namespace {

struct Checker {
    const Circuit& c;
    const BasisMap& expect;
    const Register& reg;
    std::uint64_t mask;

    Checker(const Circuit& circuit, const BasisMap& f, const Register& r)
        : c(circuit), expect(f), reg(r),
          mask(r.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r.size()) - 1)
    {
    }

    // Returns true and fills `ce` when input x fails.
    bool check(std::uint64_t x, Counterexample& ce, VerifyReport& rep) const
    {
        MachineState s(c.qubit_count);
        write_register(s, reg, x);
        s = run(c, std::move(s));
        ce.input = x;
        ce.expected = expect(x) & mask;
        ce.got = read_bits(s, reg);
        ce.sign = s.sign;
        ce.dirty = false;
        for (Qubit q = 0; q < c.qubit_count; ++q)
            if ((q < reg.lo || q >= reg.hi) && s.bits[q]) {
                ce.dirty = true;
                break;
            }
        const bool mismatch = ce.got != ce.expected;
        rep.total++;
        rep.mismatches += mismatch;
        rep.dirty += ce.dirty;
        rep.bad_sign += ce.sign != 1;
        return mismatch || ce.dirty || ce.sign != 1;
    }
};

void check_width(int n)
{
    if (n < 0 || n > 30)
        throw std::out_of_range("exhaustive verification supports n <= 30");
}

} // namespace

VerifyReport exhaustive_verify_serial(const Circuit& c, const BasisMap& expect, int n, const std::string& reg)
{
    check_width(n);
    Checker chk(c, expect, c.layout.at(reg));
    VerifyReport rep;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < count; ++x) {
        Counterexample ce;
        if (chk.check(x, ce, rep) && rep.first.size() < VerifyReport::kMaxCounterexamples)
            rep.first.push_back(ce);
    }
    return rep;
}

VerifyReport exhaustive_verify(const Circuit& c, const BasisMap& expect, int n, const std::string& reg)
{
    check_width(n);
    Checker chk(c, expect, c.layout.at(reg));
    VerifyReport rep;
    const auto count = static_cast<std::int64_t>(std::uint64_t{1} << n);
#pragma omp parallel
    {
        VerifyReport local;
#pragma omp for schedule(static)
        for (std::int64_t x = 0; x < count; ++x) {
            Counterexample ce;
            if (chk.check(static_cast<std::uint64_t>(x), ce, local) &&
                local.first.size() < VerifyReport::kMaxCounterexamples)
                local.first.push_back(ce);
        }
#pragma omp critical
        {
            rep.total += local.total;
            rep.mismatches += local.mismatches;
            rep.dirty += local.dirty;
            rep.bad_sign += local.bad_sign;
            rep.first.insert(rep.first.end(), local.first.begin(), local.first.end());
        }
    }
    std::sort(rep.first.begin(), rep.first.end(),
              [](const Counterexample& a, const Counterexample& b) { return a.input < b.input; });
    if (rep.first.size() > VerifyReport::kMaxCounterexamples)
        rep.first.resize(VerifyReport::kMaxCounterexamples);
    return rep;
}

std::string report_json(const VerifyReport& r)
{
    nlohmann::ordered_json j;
    j["ok"] = r.ok();
    j["total"] = r.total;
    j["mismatches"] = r.mismatches;
    j["dirty_ancilla"] = r.dirty;
    j["bad_sign"] = r.bad_sign;
    j["counterexamples"] = nlohmann::ordered_json::array();
    for (const Counterexample& ce : r.first)
        j["counterexamples"].push_back(
            {{"input", ce.input}, {"expected", ce.expected}, {"got", ce.got}, {"dirty", ce.dirty}, {"sign", ce.sign}});
    return j.dump(2);
}

} // namespace schumacher
