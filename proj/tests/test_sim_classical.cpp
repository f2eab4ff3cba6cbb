#include "schumacher/combinatorics.hpp"
#include "schumacher/compiler.hpp"
#include "schumacher/sim_classical.hpp"

#include <doctest.h>

#include <random>

using namespace schumacher;

namespace {

MachineState bits3(int a, int b, int c)
{
    MachineState s(3);
    s.bits = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)};
    return s;
}

BasisMap rank_map(int n)
{
    return [n](std::uint64_t x) { return oracle_rank(BitString(n, x)); };
}

} // namespace

TEST_CASE("truth tables")
{
    MachineState s = bits3(1, 1, 0);
    apply_gate(s, Gate::toffoli(0, 1, 2));
    CHECK(s[2]);

    s = bits3(0, 0, 1);
    apply_gate(s, Gate::or_toffoli(0, 1, 2));
    CHECK(s[2]);
    s = bits3(0, 1, 1);
    apply_gate(s, Gate::or_toffoli(0, 1, 2));
    CHECK_FALSE(s[2]);

    s = bits3(0, 1, 0);
    apply_gate(s, Gate::toffoli(0, 1, 2, Polarity::NP));
    CHECK(s[2]);
    s = bits3(0, 0, 0);
    apply_gate(s, Gate::toffoli(0, 1, 2, Polarity::NN));
    CHECK(s[2]);

    s = bits3(0, 0, 0);
    apply_gate(s, Gate::xor_neg(0, 2));
    CHECK(s[2]);
    apply_gate(s, Gate::xor_gate(2, 1));
    CHECK(s[1]);
    apply_gate(s, Gate::not_gate(0));
    CHECK(s[0]);
    CHECK(s.sign == 1);

    CHECK_THROWS_AS(apply_gate(s, Gate::one_qubit(OneQubitOp::H, 0)), std::invalid_argument);
}

TEST_CASE("phase patterns")
{
    MachineState s = bits3(1, 0, 0);
    apply_gate(s, Gate::phase_toffoli(0, 1, 2, Direction::Fwd));
    CHECK(s.bits == bits3(1, 0, 0).bits);
    CHECK(s.sign == -1);

    // Every other pattern keeps the sign, in both directions.
    for (int v = 0; v < 8; ++v) {
        if (v == 0b001)
            continue;
        for (Direction d : {Direction::Fwd, Direction::Rev}) {
            MachineState t = bits3(v & 1, (v >> 1) & 1, (v >> 2) & 1);
            apply_gate(t, Gate::phase_toffoli(0, 1, 2, d));
            CHECK(t.sign == 1);
            CHECK(t[2] == (((v >> 2) & 1) != (((v & 1) != 0) && ((v >> 1) & 1) != 0)));
        }
    }

    // Negated first control: literal pattern (1, 0, 0) is bits (0, 0, 0).
    s = bits3(0, 0, 0);
    apply_gate(s, Gate::phase_toffoli(0, 1, 2, Direction::Fwd, Polarity::NP));
    CHECK(s.sign == -1);
    s = bits3(0, 1, 0);
    apply_gate(s, Gate::phase_toffoli(0, 1, 2, Direction::Fwd, Polarity::NN));
    CHECK(s.sign == -1);

    s = bits3(0, 1, 0);
    apply_gate(s, Gate::phase_or(0, 1, 2, Direction::Fwd));
    CHECK(s.sign == -1);
    CHECK(s[2]);
    apply_gate(s, Gate::phase_or(0, 1, 2, Direction::Rev));
    CHECK(s.sign == 1);
    CHECK_FALSE(s[2]);
    s = bits3(0, 1, 0);
    apply_gate(s, Gate::phase_or(0, 1, 2, Direction::Rev));
    CHECK(s.sign == 1);
}

TEST_CASE("gates touch only their target and the sign")
{
    std::mt19937 rng(3);
    const Gate gates[] = {Gate::not_gate(4),
                          Gate::xor_gate(1, 4),
                          Gate::xor_neg(2, 4),
                          Gate::toffoli(0, 3, 4, Polarity::NP),
                          Gate::or_toffoli(2, 3, 4),
                          Gate::phase_toffoli(1, 2, 4, Direction::Rev, Polarity::NN),
                          Gate::phase_or(0, 1, 4, Direction::Fwd)};
    for (int t = 0; t < 200; ++t)
        for (const Gate& g : gates) {
            MachineState s(6);
            for (auto& b : s.bits)
                b = static_cast<std::uint8_t>(rng() & 1);
            MachineState before = s;
            apply_gate(s, g);
            for (Qubit q = 0; q < 6; ++q)
                if (q != 4)
                    CHECK(s[q] == before[q]);
            MachineState again = before;
            apply_gate(again, g);
            CHECK(again == s);
        }
}

TEST_CASE("running circuits")
{
    const Circuit empty{4, {}, {}, {}};
    MachineState in(4);
    in.bits = {1, 0, 1, 1};
    CHECK(run(empty, in) == in);
    CHECK_THROWS_AS(run(empty, MachineState(3)), std::invalid_argument);

    const Circuit c = compile(ProgramId::FinalSchumacher, {6, Mode::Standard, PhaseMode::Modified, false});
    MachineState s(c.qubit_count);
    write_register(s, c.layout.at("X"), 0b000111);
    const MachineState out = run(c, s);
    CHECK(read_register(out, c.layout.at("X")) == static_cast<std::int64_t>(oracle_rank(BitString(6, 0b000111))));
    CHECK(read_register(out, c.layout.at("X")) == 22);
    CHECK(out.sign == 1);

    Circuit both = c;
    both.append(invert_circuit(c));
    std::mt19937 rng(5);
    for (int t = 0; t < 50; ++t) {
        MachineState r(c.qubit_count);
        for (auto& b : r.bits)
            b = static_cast<std::uint8_t>(rng() & 1);
        const MachineState back = run(both, r);
        CHECK(back.bits == r.bits);
        CHECK(back.sign == 1);
    }
}

TEST_CASE("register access")
{
    MachineState s(6);
    const Register x{"X", 1, 5, true, false, false};
    write_register(s, x, 0b1110);
    CHECK(read_bits(s, x) == 0b1110);
    CHECK(read_register(s, x) == -2);
    CHECK_FALSE(s[0]);
    CHECK_FALSE(s[5]);
    const Register u{"U", 1, 5, false, false, false};
    CHECK(read_register(s, u) == 14);
}

TEST_CASE("exhaustive verification")
{
    const Circuit c = compile(ProgramId::FinalSchumacher, {4, Mode::SpaceEfficient, PhaseMode::Modified, false});
    const VerifyReport ok = exhaustive_verify(c, rank_map(4), 4);
    CHECK(ok.ok());
    CHECK(ok.total == 16);
    CHECK(ok.first.empty());

    for (std::int64_t k : {0, 5, 11, 15}) {
        const Circuit add = compile_subroutine(Subroutine::UnconditionalAdd, BitConstant::from_int(k, 4),
                                               Mode::Standard, PhaseMode::Plain);
        const auto uk = static_cast<std::uint64_t>(k);
        CHECK(exhaustive_verify(add, [uk](std::uint64_t x) { return (x + uk) % 16; }, 4).ok());
    }

    Circuit broken = c;
    broken.gates.erase(broken.gates.begin() + static_cast<std::ptrdiff_t>(broken.gates.size() / 2));
    const VerifyReport bad = exhaustive_verify(broken, rank_map(4), 4);
    CHECK_FALSE(bad.ok());
    CHECK(bad.mismatches + bad.dirty + bad.bad_sign >= 1);
    CHECK(!bad.first.empty());
    CHECK(bad.first.size() <= VerifyReport::kMaxCounterexamples);
    const std::string json = report_json(bad);
    CHECK(json.find("\"ok\": false") != std::string::npos);
    CHECK(json.find("counterexamples") != std::string::npos);
}

TEST_CASE("parallel verification matches the serial reference")
{
    for (int n : {5, 7}) {
        const Circuit c = compile(ProgramId::FinalSchumacher, {n, Mode::Standard, PhaseMode::Plain, false});
        Circuit broken = c;
        broken.gates.erase(broken.gates.begin() + 3 * static_cast<std::ptrdiff_t>(broken.gates.size() / 4));
        for (const Circuit* k : {&c, static_cast<const Circuit*>(&broken)}) {
            const VerifyReport a = exhaustive_verify(*k, rank_map(n), n);
            const VerifyReport b = exhaustive_verify_serial(*k, rank_map(n), n);
            CHECK(a.total == b.total);
            CHECK(a.mismatches == b.mismatches);
            CHECK(a.dirty == b.dirty);
            CHECK(a.bad_sign == b.bad_sign);
            REQUIRE(a.first.size() == b.first.size());
            for (std::size_t i = 0; i < a.first.size(); ++i)
                CHECK(a.first[i].input == b.first[i].input);
        }
    }
}

TEST_CASE("plain circuits never change the sign")
{
    const Circuit c = compile(ProgramId::FinalSchumacherInverse, {5, Mode::SpaceEfficient, PhaseMode::Plain, false});
    for (std::uint64_t y = 0; y < 32; ++y) {
        MachineState s(c.qubit_count);
        write_register(s, c.layout.at("X"), y);
        for (const Gate& g : c.gates) {
            apply_gate(s, g);
            REQUIRE(s.sign == 1);
        }
    }
}
