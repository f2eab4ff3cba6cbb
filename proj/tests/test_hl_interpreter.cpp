#include "schumacher/combinatorics.hpp"
#include "schumacher/programs.hpp"

#include <doctest.h>

#include <sstream>

using namespace schumacher;

namespace {

RegisterFile forward_input(int n, std::uint64_t x) { return {n, static_cast<std::int64_t>(x), 0, 0}; }

} // namespace

TEST_CASE("final program on the worked example")
{
    const RegisterFile r = run_program(ProgramId::FinalSchumacher, forward_input(10, 0b0010011011));
    CHECK(r.X == 409);
    CHECK(r.S == 0);
    CHECK(r.Y == 0);
}

TEST_CASE("final program ranks every input")
{
    for (int n = 1; n <= 10; ++n) {
        const auto table = oracle_rank_table(n);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const RegisterFile r = run_program(ProgramId::FinalSchumacher, forward_input(n, x));
            REQUIRE(r.X == static_cast<std::int64_t>(table[x]));
            REQUIRE(r.S == 0);
        }
    }
}

TEST_CASE("inverse programs unrank every code")
{
    for (int n = 1; n <= 9; ++n) {
        const auto table = oracle_rank_table(n);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const auto y = static_cast<std::int64_t>(table[x]);
            const RegisterFile merged = run_program(ProgramId::FinalSchumacherInverse, {n, y, 0, 0});
            REQUIRE(merged.X == static_cast<std::int64_t>(x));
            const RegisterFile split = run_program(ProgramId::TryInverse, {n, 0, y, 0});
            REQUIRE(split.X == static_cast<std::int64_t>(x));
            REQUIRE(split.Y == 0);
        }
    }
}

TEST_CASE("first try leaves the weight in S")
{
    for (int n = 1; n <= 8; ++n) {
        const auto table = oracle_rank_table(n);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const RegisterFile r = run_program(ProgramId::FirstTry, forward_input(n, x));
            REQUIRE(r.Y == static_cast<std::int64_t>(table[x]));
            REQUIRE(r.S == BitString(n, x).weight());
            REQUIRE(r.X == static_cast<std::int64_t>(x));
            const RegisterFile cleared = execute(s_clearing_loop(n), r);
            REQUIRE(cleared.S == 0);
        }
    }
}

TEST_CASE("second loop needs S <= m")
{
    // As printed, the guard reads S >= m; n = 4, y = 1 already breaks it.
    auto prog = build_program(ProgramId::TryInverse, 4);
    int patched = 0;
    for (Statement& s : prog)
        if (!s.guards.empty() && s.guards[0].kind == Condition::Kind::AtMost) {
            s.guards[0].kind = Condition::Kind::AtLeast;
            ++patched;
        }
    CHECK(patched == 5);
    bool wrong = false;
    try {
        const RegisterFile r = execute(prog, {4, 0, 1, 0});
        wrong = r.X != 1 || r.Y != 0 || r.S != 0;
    } catch (const IntegrityError&) {
        wrong = true;
    }
    CHECK(wrong);
    const RegisterFile good = run_program(ProgramId::TryInverse, {4, 0, 1, 0});
    CHECK(good.X == 1);

    // The worked example survives either reading.
    CHECK(execute(build_program(ProgramId::TryInverse, 10), {10, 0, 409, 0}).X == 0b0010011011);
}

TEST_CASE("forward program mirrors the merged inverse")
{
    for (int n : {1, 2, 5, 9}) {
        const auto fwd = build_program(ProgramId::FinalSchumacher, n);
        const auto inv = build_program(ProgramId::FinalSchumacherInverse, n);
        REQUIRE(fwd.size() == inv.size());
        for (std::size_t i = 0; i < fwd.size(); ++i) {
            const Statement mirrored = inv[inv.size() - 1 - i].inverse();
            CHECK(fwd[i].guards == mirrored.guards);
            CHECK(fwd[i].action == mirrored.action);
        }
    }
    CHECK(build_program(ProgramId::FinalSchumacher, 4).size() == 47);
}

TEST_CASE("reversed execution undoes the forward program")
{
    const int n = 7;
    const auto fwd = build_program(ProgramId::FinalSchumacher, n);
    for (std::uint64_t x = 0; x < 128; ++x) {
        const RegisterFile coded = execute(fwd, forward_input(n, x));
        REQUIRE(execute_reversed(fwd, coded) == forward_input(n, x));
    }
}

TEST_CASE("disjoint registers during the split inverse")
{
    for (int n : {3, 6, 8})
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
            REQUIRE(check_disjointness_trace(n, y));
}

TEST_CASE("trace output")
{
    std::ostringstream os;
    run_program(ProgramId::FinalSchumacher, forward_input(2, 0b10),
                [&](std::size_t step, const Statement& s, const RegisterFile& r) { write_trace_line(os, step, s, r); });
    const std::string text = os.str();
    CHECK(text.rfind("0, p1.inc, 2, 0, 0\n", 0) == 0);
    CHECK(text.find("m0.add, 2, 0, 0\n") != std::string::npos);
    std::size_t lines = 0;
    for (char c : text)
        lines += c == '\n';
    CHECK(lines == build_program(ProgramId::FinalSchumacher, 2).size());
}

TEST_CASE("statement text")
{
    const auto prog = build_program(ProgramId::FinalSchumacherInverse, 3);
    CHECK(prog[0].id == "m0.sub");
    CHECK(prog[0].describe() == "X -= 1");
    CHECK(prog[1].describe() == "if X>=0 then S += 1");
    CHECK(prog[8].describe() == "if S<=0 then X += 1");
    CHECK(prog[0].inverse().id == "m0.sub'");
    CHECK(prog[0].inverse().action.amount == 1);
}

TEST_CASE("register ranges are enforced")
{
    const std::vector<Statement> grow{{"g", {}, {Action::Kind::Add, Reg::X, 16, 0}}};
    CHECK_THROWS_AS(execute(grow, {4, 0, 0, 0}), IntegrityError);
    CHECK_NOTHROW(execute(grow, {4, -1, 0, 0}));
    const std::vector<Statement> bump{{"s", {}, {Action::Kind::Add, Reg::S, -1, 0}}};
    CHECK_THROWS_AS(execute(bump, {4, 0, 0, 0}), IntegrityError);
    CHECK_THROWS_AS(execute({}, {63, 0, 0, 0}), std::out_of_range);
    CHECK_NOTHROW(build_program(ProgramId::FinalSchumacher, 64));
    CHECK_THROWS_AS(build_program(ProgramId::FinalSchumacher, 0), std::out_of_range);
}

TEST_CASE("trunc")
{
    CHECK(trunc(0b10110, 3) == 0b110);
    CHECK(trunc(-1, 4) == 15);
    CHECK(trunc(5, 0) == 0);
    CHECK(trunc(-1, 64) == ~std::uint64_t{0});
}

TEST_CASE("program names")
{
    CHECK(parse_program("forward") == ProgramId::FinalSchumacher);
    CHECK(parse_program("inverse") == ProgramId::FinalSchumacherInverse);
    CHECK(parse_program("try_inverse") == ProgramId::TryInverse);
    CHECK(program_name(ProgramId::FirstTry) == "first_try");
    CHECK_THROWS_AS(parse_program("nope"), std::invalid_argument);
}
