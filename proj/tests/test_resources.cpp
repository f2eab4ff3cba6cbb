#include "schumacher/resources.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace schumacher;

namespace {

std::uint64_t subroutine_total(Subroutine s, Mode m, int w)
{
    const BitConstant k = s == Subroutine::ConditionalAdd ? BitConstant::all_ones(w) : BitConstant::from_int(0, w);
    return count(compile_subroutine(s, k, m, PhaseMode::Plain, false)).total;
}

double slope(Subroutine s, Mode m)
{
    std::vector<std::pair<double, double>> nodes;
    for (int w : {64, 128, 256})
        nodes.emplace_back(w, static_cast<double>(subroutine_total(s, m, w)));
    return fit_leading(nodes, 1);
}

int ceil_log2(int n)
{
    int b = 0;
    while ((1 << b) < n)
        ++b;
    return b;
}

} // namespace

TEST_CASE("empty circuit")
{
    const ResourceReport r = count(Circuit{});
    CHECK(r.total == 0);
    CHECK(r.qubit_count == 0);
    CHECK(r.by_kind.empty());
    CHECK(r.exclusive.empty());
}

TEST_CASE("tallies by kind and span")
{
    Circuit c;
    c.qubit_count = 4;
    c.add(Gate::not_gate(0));
    c.begin_span("a");
    c.add(Gate::xor_gate(0, 1));
    c.begin_span("b");
    c.add(Gate::toffoli(0, 1, 2));
    c.add(Gate::one_qubit(OneQubitOp::H, 3));
    c.end_span("b");
    c.add(Gate::phase_or(0, 1, 3, Direction::Rev));
    c.end_span("a");
    const ResourceReport r = count(c);
    CHECK(r.total == 5);
    CHECK(r.by_kind.at("x") == 1);
    CHECK(r.by_kind.at("ccx") == 1);
    CHECK(r.by_kind.at("porx") == 1);
    CHECK(r.one_qubit == 2);
    CHECK(r.two_qubit == 1);
    CHECK(r.three_qubit == 2);
    CHECK(r.exclusive.at("") == 1);
    CHECK(r.exclusive.at("a") == 2);
    CHECK(r.exclusive.at("b") == 2);
    CHECK(r.inclusive.at("a") == 4);
    CHECK(r.inclusive.at("b") == 2);
    const std::string json = report_json(r);
    CHECK(json.find("\"total\": 5") != std::string::npos);
    CHECK(json.find("\"(none)\": 1") != std::string::npos);
}

TEST_CASE("subtotals add up on a full compile")
{
    for (Mode m : {Mode::Standard, Mode::SpaceEfficient}) {
        const ResourceReport r = count(compile(ProgramId::FinalSchumacher, {12, m, PhaseMode::Modified, false}));
        const auto sum = [](const auto& map) {
            return std::accumulate(map.begin(), map.end(), std::uint64_t{0},
                                   [](std::uint64_t s, const auto& kv) { return s + kv.second; });
        };
        CHECK(sum(r.exclusive) == r.total);
        CHECK(sum(r.by_kind) == r.total);
        CHECK(r.one_qubit + r.two_qubit + r.three_qubit == r.total);
    }
}

TEST_CASE("adder span size")
{
    for (int w : {5, 17, 40}) {
        const Circuit c = compile_subroutine(Subroutine::ConditionalAdd, BitConstant::all_ones(w), Mode::Standard,
                                             PhaseMode::Plain);
        const ResourceReport r = count(c);
        CHECK(r.inclusive.at("conditional_add") == static_cast<std::uint64_t>(4 * w - 3));
    }
    CHECK(subroutine_total(Subroutine::TestEquality, Mode::Standard, 10) == 21);
    CHECK(subroutine_total(Subroutine::TestGreaterThan, Mode::Standard, 10) == 30);
}

TEST_CASE("linear subroutine slopes")
{
    CHECK(slope(Subroutine::ConditionalAdd, Mode::Standard) == doctest::Approx(4.0).epsilon(0.1));
    CHECK(slope(Subroutine::TestEquality, Mode::Standard) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(slope(Subroutine::TestGreaterThan, Mode::Standard) == doctest::Approx(3.0).epsilon(0.1));
    CHECK(slope(Subroutine::ConditionalAdd, Mode::SpaceEfficient) == doctest::Approx(6.0).epsilon(0.1));
    CHECK(slope(Subroutine::TestEquality, Mode::SpaceEfficient) == doctest::Approx(4.0).epsilon(0.1));
    CHECK(slope(Subroutine::TestGreaterThan, Mode::SpaceEfficient) == doctest::Approx(5.0).epsilon(0.1));
}

TEST_CASE("qubit counts")
{
    for (int n : {3, 8, 16, 24, 32, 48, 64}) {
        const ResourceReport std_r = count(compile(ProgramId::FinalSchumacher, {n, Mode::Standard, PhaseMode::Plain, false}));
        CHECK(std_r.qubit_count == static_cast<Qubit>(2 * n + ceil_log2(n) + 5));
        const ResourceReport se = count(compile(ProgramId::FinalSchumacher, {n, Mode::SpaceEfficient, PhaseMode::Plain, false}));
        const int root = static_cast<int>(std::ceil(std::sqrt(n + 1.0)));
        CHECK(se.qubit_count <= static_cast<Qubit>(n + 2 * root + ceil_log2(n) + 6));
    }
    const ResourceReport r32 = count(compile(ProgramId::FinalSchumacher, {32, Mode::Standard, PhaseMode::Plain, false}));
    CHECK(r32.qubit_count == 74);
}

TEST_CASE("leading coefficient fits")
{
    std::vector<std::pair<double, double>> cubic;
    for (double n : {16.0, 24.0, 32.0, 48.0})
        cubic.emplace_back(n, 2 * n * n * n - 7 * n * n + 3 * n + 11);
    CHECK(std::abs(fit_leading(cubic, 3) - 2.0) < 1e-9);

    std::vector<std::pair<double, double>> three{{1, 2}, {2, 16}, {3, 54}};
    CHECK(std::abs(fit_leading(three, 3) - 2.0) < 1e-9);

    std::vector<std::pair<double, double>> line{{10, 43}, {20, 83}, {40, 163}};
    CHECK(std::abs(fit_leading(line, 1) - 4.0) < 1e-12);

    CHECK_THROWS_AS(fit_leading({{2, 1}, {2, 3}, {4, 5}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(fit_leading({}, 3), std::invalid_argument);
}

TEST_CASE("sweep csv")
{
    const std::string csv = sweep_csv({{16, 100, 41}, {24, 300, 58}});
    CHECK(csv == "n,total,qubits\n16,100,41\n24,300,58\n");
}

TEST_CASE("counting needs no simulation at n = 64")
{
    const ResourceReport r = count(compile(ProgramId::FinalSchumacher, {64, Mode::SpaceEfficient, PhaseMode::Modified, true}));
    CHECK(r.three_qubit == 0);
    CHECK(r.total > 0);
}
