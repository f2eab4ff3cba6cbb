#include "schumacher/combinatorics.hpp"
#include "schumacher/compiler.hpp"
#include "schumacher/sim_classical.hpp"
#include "schumacher/sim_state.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace schumacher;

namespace {

StateVector random_state(int q, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    StateVector v(q);
    double s = 0.0;
    for (Amplitude& a : v.amp) {
        a = {g(rng), g(rng)};
        s += std::norm(a);
    }
    for (Amplitude& a : v.amp)
        a /= std::sqrt(s);
    return v;
}

std::vector<Gate> three_qubit_gates(Qubit a, Qubit b, Qubit t)
{
    std::vector<Gate> gs;
    for (Polarity p : {Polarity::PP, Polarity::NP, Polarity::NN}) {
        gs.push_back(Gate::toffoli(a, b, t, p));
        for (Direction d : {Direction::Fwd, Direction::Rev})
            gs.push_back(Gate::phase_toffoli(a, b, t, d, p));
    }
    gs.push_back(Gate::or_toffoli(a, b, t));
    gs.push_back(Gate::phase_or(a, b, t, Direction::Fwd));
    gs.push_back(Gate::phase_or(a, b, t, Direction::Rev));
    return gs;
}

Circuit single(const Gate& g, Qubit q)
{
    Circuit c;
    c.qubit_count = q;
    c.add(g);
    return c;
}

} // namespace

TEST_CASE("product states")
{
    const StateVector one = product_state({{1.0, 0.0}});
    CHECK(one.amp == std::vector<Amplitude>{1.0, 0.0});

    const double r = 1.0 / std::sqrt(2.0);
    const StateVector uni = product_state({{r, r}, {r, r}});
    for (const Amplitude& a : uni.amp)
        CHECK(std::abs(a - 0.5) < 1e-15);

    const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
    const StateVector tilt = product_state({{c, s}});
    CHECK(std::abs(std::abs(tilt.amp[0]) - 0.9238795325) < 1e-9);

    const StateVector padded = product_state({{0.0, 1.0}}, 2);
    CHECK(padded.q == 3);
    CHECK(padded.amp[1] == Amplitude{1.0, 0.0});
    CHECK(std::abs(padded.norm() - 1.0) < 1e-15);

    CHECK_THROWS_AS(product_state({{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(25), std::out_of_range);
}

TEST_CASE("not on zero")
{
    StateVector v(1);
    apply_gate(v, Gate::not_gate(0));
    CHECK(v.amp[0] == Amplitude{0.0, 0.0});
    CHECK(v.amp[1] == Amplitude{1.0, 0.0});
    CHECK_THROWS_AS(apply_gate(v, Gate::not_gate(1)), std::invalid_argument);
}

TEST_CASE("one-qubit matrices")
{
    const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
    const auto ry = one_qubit_matrix(OneQubitOp::RY);
    CHECK(std::abs(ry[0] - c) < 1e-15);
    CHECK(std::abs(ry[1] + s) < 1e-15);
    CHECK(std::abs(ry[2] - s) < 1e-15);
    const auto th = one_qubit_matrix(OneQubitOp::TH);
    CHECK(std::abs(th[2] - std::polar(1.0 / std::sqrt(2.0), std::numbers::pi / 4)) < 1e-15);
    for (OneQubitOp op : {OneQubitOp::H, OneQubitOp::T, OneQubitOp::TH, OneQubitOp::XH, OneQubitOp::RY,
                          OneQubitOp::RY_X, OneQubitOp::X_RY}) {
        const auto m = one_qubit_matrix(op);
        const auto d = one_qubit_matrix(op, true);
        // m * d = identity
        CHECK(std::abs(m[0] * d[0] + m[1] * d[2] - 1.0) < 1e-14);
        CHECK(std::abs(m[0] * d[1] + m[1] * d[3]) < 1e-14);
        CHECK(std::abs(m[2] * d[0] + m[3] * d[2]) < 1e-14);
        CHECK(std::abs(m[2] * d[1] + m[3] * d[3] - 1.0) < 1e-14);
    }
}

TEST_CASE("kernel matches the reference on every gate kind")
{
    std::mt19937_64 rng(1);
    std::vector<Gate> gates = three_qubit_gates(4, 1, 3);
    const auto more = three_qubit_gates(0, 5, 2);
    gates.insert(gates.end(), more.begin(), more.end());
    gates.push_back(Gate::not_gate(2));
    gates.push_back(Gate::xor_gate(5, 0));
    gates.push_back(Gate::xor_neg(0, 5));
    for (OneQubitOp op : {OneQubitOp::H, OneQubitOp::TH, OneQubitOp::X_RY})
        for (bool adj : {false, true})
            gates.push_back(Gate::one_qubit(op, 3, adj));
    for (int q : {6, 15}) {
        for (const Gate& g : gates) {
            StateVector a = random_state(q, rng);
            StateVector b = a;
            apply_gate(a, g);
            apply_gate_serial(b, g);
            CHECK(max_abs_diff(a, b) < 1e-14);
            CHECK(std::abs(a.norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("two-bit templates reproduce every three-qubit gate")
{
    for (const Gate& g : three_qubit_gates(2, 0, 1)) {
        const Circuit lowered = lower_two_bit(single(g, 3));
        const bool phase = g.kind == GateKind::PhaseToffoli || g.kind == GateKind::PhaseOr;
        CHECK(lowered.gates.size() == (phase ? 7u : 16u));
        std::size_t twos = 0;
        for (const Gate& h : lowered.gates) {
            CHECK(h.controls() <= 1);
            twos += h.controls() == 1;
        }
        CHECK(twos == (phase ? 3u : 8u));
        for (std::uint64_t x = 0; x < 8; ++x) {
            MachineState s(3);
            for (Qubit q = 0; q < 3; ++q)
                s.bits[q] = static_cast<std::uint8_t>((x >> q) & 1u);
            apply_gate(s, g);
            std::uint64_t y = 0;
            for (Qubit q = 0; q < 3; ++q)
                y |= static_cast<std::uint64_t>(s.bits[q]) << q;
            const StateVector out = apply_circuit(StateVector::basis(3, x), lowered);
            StateVector want = StateVector::basis(3, y);
            want.amp[y] *= s.sign;
            INFO("gate ", static_cast<int>(g.kind), " pol ", static_cast<int>(g.pol), " x ", x);
            CHECK(max_abs_diff(out, want) < 1e-12);
        }
    }
}

TEST_CASE("lowering keeps span markers and classical gates")
{
    const Circuit c = compile_subroutine(Subroutine::ConditionalAdd, BitConstant::from_int(5, 4), Mode::Standard,
                                         PhaseMode::Modified);
    const Circuit low = lower_two_bit(c);
    CHECK(validate(low).empty());
    REQUIRE(low.spans.size() == 2);
    CHECK(low.spans.front().position == 0);
    CHECK(low.spans.back().position == low.gates.size());
    std::mt19937_64 rng(9);
    for (int t = 0; t < 3; ++t) {
        const StateVector v = random_state(static_cast<int>(c.qubit_count), rng);
        CHECK(max_abs_diff(apply_circuit(v, c), apply_circuit(v, low)) < 1e-10);
    }
}

TEST_CASE("basis states agree with the classical simulator")
{
    for (PhaseMode ph : {PhaseMode::Plain, PhaseMode::Modified}) {
        const Circuit c = compile(ProgramId::FinalSchumacher, {4, Mode::SpaceEfficient, ph, false});
        const int q = static_cast<int>(c.qubit_count);
        for (std::uint64_t x = 0; x < 16; ++x) {
            const StateVector out = apply_circuit(StateVector::basis(q, x), c);
            const std::uint64_t code = oracle_rank(BitString(4, x));
            CHECK(std::abs(out.amp[code] - 1.0) < 1e-12);
            CHECK(std::abs(out.norm() - 1.0) < 1e-12);
        }
        std::mt19937_64 rng(2);
        for (int t = 0; t < 10; ++t) {
            MachineState s(c.qubit_count);
            for (auto& b : s.bits)
                b = static_cast<std::uint8_t>(rng() & 1);
            std::uint64_t in = 0;
            for (Qubit i = 0; i < c.qubit_count; ++i)
                in |= static_cast<std::uint64_t>(s.bits[i]) << i;
            const MachineState fin = run(c, s);
            std::uint64_t out = 0;
            for (Qubit i = 0; i < c.qubit_count; ++i)
                out |= static_cast<std::uint64_t>(fin.bits[i]) << i;
            const StateVector v = apply_circuit(StateVector::basis(q, in), c);
            CHECK(std::abs(v.amp[out] - static_cast<double>(fin.sign)) < 1e-12);
        }
    }
}

TEST_CASE("phase-modified coder equals the plain coder on superpositions")
{
    const int n = 5;
    const Circuit plain = compile(ProgramId::FinalSchumacher, {n, Mode::Standard, PhaseMode::Plain, false});
    const Circuit mod = compile(ProgramId::FinalSchumacher, {n, Mode::Standard, PhaseMode::Modified, false});
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        StateVector v(static_cast<int>(plain.qubit_count));
        double s = 0.0;
        for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
            v.amp[x] = {g(rng), g(rng)};
            s += std::norm(v.amp[x]);
        }
        for (Amplitude& a : v.amp)
            a /= std::sqrt(s);
        CHECK(max_abs_diff(apply_circuit(v, plain), apply_circuit(v, mod)) < 1e-10);
    }
}

TEST_CASE("linearity and unitarity")
{
    const Circuit c = compile(ProgramId::FinalSchumacherInverse, {3, Mode::Standard, PhaseMode::Modified, true});
    const int q = static_cast<int>(c.qubit_count);
    std::mt19937_64 rng(8);
    const StateVector u = random_state(q, rng), w = random_state(q, rng);
    const Amplitude alpha{0.6, 0.1}, beta{-0.3, 0.7};
    StateVector mix(q);
    for (std::size_t i = 0; i < mix.dim(); ++i)
        mix.amp[i] = alpha * u.amp[i] + beta * w.amp[i];
    const StateVector cu = apply_circuit(u, c), cw = apply_circuit(w, c), cm = apply_circuit(mix, c);
    CHECK(std::abs(cu.norm() - 1.0) < 1e-10);
    double err = 0.0;
    for (std::size_t i = 0; i < mix.dim(); ++i)
        err = std::max(err, std::abs(cm.amp[i] - (alpha * cu.amp[i] + beta * cw.amp[i])));
    CHECK(err < 1e-10);
    CHECK(max_abs_diff(apply_circuit_serial(u, c), cu) < 1e-10);
    CHECK_THROWS_AS(apply_circuit(StateVector(3), c), std::invalid_argument);
}

TEST_CASE("projection")
{
    const auto [p0, v0] = project_and_renormalize(StateVector(1), {0});
    CHECK(p0 == doctest::Approx(1.0));
    CHECK(v0.amp[0] == Amplitude{1.0, 0.0});

    const double r = 1.0 / std::sqrt(2.0);
    const auto [p1, v1] = project_and_renormalize(product_state({{r, r}, {r, r}}), {1});
    CHECK(p1 == doctest::Approx(0.5));
    CHECK(std::abs(v1.amp[0] - r) < 1e-15);
    CHECK(std::abs(v1.amp[1] - r) < 1e-15);
    CHECK(std::abs(v1.amp[2]) == 0.0);

    CHECK_THROWS_AS(project_and_renormalize(StateVector::basis(1, 1), {0}), std::domain_error);
}

TEST_CASE("projecting the coded example onto a clear top code bit")
{
    // Inputs already in the eigenbasis: each qubit (cos pi/8, sin pi/8) weighted per bit.
    const int n = 4;
    const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
    const Circuit coder = compile(ProgramId::FinalSchumacher, {n, Mode::Standard, PhaseMode::Modified, false});
    std::vector<std::pair<Amplitude, Amplitude>> f(n, {c, s});
    const StateVector in = product_state(f, static_cast<int>(coder.qubit_count) - n);
    const StateVector out = apply_circuit(in, coder);
    const auto [p, proj] = project_and_renormalize(out, {static_cast<Qubit>(n - 1)});
    double direct = 0.0;
    for (std::uint64_t x = 0; x < 16; ++x)
        if (oracle_rank(BitString(n, x)) < 8)
            direct += std::norm(in.amp[x]);
    CHECK(std::abs(p - direct) < 1e-12);
    CHECK(std::abs(proj.norm() - 1.0) < 1e-12);
}
