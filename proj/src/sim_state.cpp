#include "schumacher/sim_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schumacher {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t bitmask(Qubit q) { return std::uint64_t{1} << q; }

void check_qubits(int q)
{
    if (q < 0 || q > kMaxStateQubits)
        throw std::out_of_range("statevector supports at most 24 qubits");
}

// Spreads the bits of k over the positions not in `holes` (sorted ascending).
std::uint64_t spread(std::uint64_t k, const std::array<Qubit, 3>& holes, int count)
{
    for (int i = 0; i < count; ++i) {
        const std::uint64_t low = k & (bitmask(holes[static_cast<std::size_t>(i)]) - 1);
        k = ((k ^ low) << 1) | low;
    }
    return k;
}

using Matrix = std::array<Amplitude, 4>;

Matrix mul(const Matrix& a, const Matrix& b)
{
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

// Fires-and-phase description of a classical gate on one basis index.
struct ClassicalAction {
    bool fire;
    bool negate;
};

ClassicalAction classical_action(const Gate& g, std::uint64_t i)
{
    auto bit = [&](Qubit q) { return (i & bitmask(q)) != 0; };
    const bool t = bit(g.target);
    switch (g.kind) {
    case GateKind::Not: return {true, false};
    case GateKind::Xor: return {bit(g.c1), false};
    case GateKind::XorNeg: return {!bit(g.c1), false};
    case GateKind::Toffoli:
        return {(bit(g.c1) != negated_first(g.pol)) && (bit(g.c2) != negated_second(g.pol)), false};
    case GateKind::OrToffoli: return {bit(g.c1) || bit(g.c2), false};
    case GateKind::PhaseToffoli: {
        const bool a = bit(g.c1) != negated_first(g.pol), b = bit(g.c2) != negated_second(g.pol);
        return {a && b, a && !b && !t};
    }
    case GateKind::PhaseOr: {
        const bool a = bit(g.c1), b = bit(g.c2);
        return {a || b, !a && b && t == (g.dir == Direction::Rev)};
    }
    case GateKind::OneQubit: break;
    }
    return {false, false};
}

void check_gate(const StateVector& v, const Gate& g)
{
    const auto q = static_cast<Qubit>(v.q);
    if (g.target >= q || (g.controls() >= 1 && g.c1 >= q) || (g.controls() == 2 && g.c2 >= q))
        throw std::invalid_argument("gate addresses a qubit outside the state");
}

} // namespace

StateVector::StateVector(int qubits) : q(qubits)
{
    check_qubits(qubits);
    amp.assign(std::size_t{1} << qubits, Amplitude{0.0, 0.0});
    amp[0] = 1.0;
}

StateVector StateVector::basis(int qubits, std::uint64_t index)
{
    StateVector v(qubits);
    if (index >= v.dim())
        throw std::out_of_range("basis index outside the state");
    v.amp[0] = 0.0;
    v.amp[index] = 1.0;
    return v;
}

double StateVector::norm() const
{
    double s = 0.0;
    for (const Amplitude& a : amp)
        s += std::norm(a);
    return std::sqrt(s);
}

StateVector product_state(const std::vector<std::pair<Amplitude, Amplitude>>& factors, int padding_zeros)
{
    const int q = static_cast<int>(factors.size()) + padding_zeros;
    check_qubits(q);
    for (const auto& [a, b] : factors)
        if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12)
            throw std::invalid_argument("product_state factor is not normalized");
    StateVector v(q);
    std::vector<Amplitude> cur{1.0};
    for (const auto& [a, b] : factors) {
        std::vector<Amplitude> next(cur.size() * 2);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i] = cur[i] * a;
            next[i + cur.size()] = cur[i] * b;
        }
        cur.swap(next);
    }
    std::fill(v.amp.begin(), v.amp.end(), Amplitude{0.0, 0.0});
    std::copy(cur.begin(), cur.end(), v.amp.begin());
    return v;
}

std::array<Amplitude, 4> one_qubit_matrix(OneQubitOp op, bool adjoint)
{
    const double r = 1.0 / std::sqrt(2.0);
    const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
    const Matrix H{r, r, r, -r};
    const Matrix T{1.0, 0.0, 0.0, std::polar(1.0, kPi / 4)};
    const Matrix X{0.0, 1.0, 1.0, 0.0};
    const Matrix RY{c, -s, s, c};
    Matrix m;
    switch (op) {
    case OneQubitOp::H: m = H; break;
    case OneQubitOp::T: m = T; break;
    case OneQubitOp::TH: m = mul(T, H); break;
    case OneQubitOp::XH: m = mul(X, H); break;
    case OneQubitOp::RY: m = RY; break;
    case OneQubitOp::RY_X: m = mul(RY, X); break;
    case OneQubitOp::X_RY: m = mul(X, RY); break;
    }
    if (adjoint)
        m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    return m;
}

void apply_gate_serial(StateVector& v, const Gate& g)
{
    check_gate(v, g);
    const std::uint64_t tb = bitmask(g.target);
    if (g.kind == GateKind::OneQubit) {
        const Matrix m = one_qubit_matrix(g.op, g.dir == Direction::Rev);
        for (std::uint64_t i = 0; i < v.dim(); ++i) {
            if (i & tb)
                continue;
            const Amplitude a0 = v.amp[i], a1 = v.amp[i | tb];
            v.amp[i] = m[0] * a0 + m[1] * a1;
            v.amp[i | tb] = m[2] * a0 + m[3] * a1;
        }
        return;
    }
    std::vector<Amplitude> out(v.dim());
    for (std::uint64_t i = 0; i < v.dim(); ++i) {
        const ClassicalAction act = classical_action(g, i);
        out[act.fire ? i ^ tb : i] = act.negate ? -v.amp[i] : v.amp[i];
    }
    v.amp.swap(out);
}

void apply_gate(StateVector& v, const Gate& g)
{
    check_gate(v, g);
    const std::uint64_t tb = bitmask(g.target);
    Amplitude* a = v.amp.data();

    std::array<Qubit, 3> holes{g.target, g.target, g.target};
    int count = 1;
    std::uint64_t c1b = 0, c2b = 0;
    if (g.controls() >= 1) {
        holes[1] = g.c1;
        c1b = bitmask(g.c1);
        ++count;
    }
    if (g.controls() == 2) {
        holes[2] = g.c2;
        c2b = bitmask(g.c2);
        ++count;
    }
    std::sort(holes.begin(), holes.begin() + count);
    const auto blocks = static_cast<std::int64_t>(v.dim() >> count);
    const bool par = v.q >= 14;

    if (g.kind == GateKind::OneQubit) {
        const Matrix m = one_qubit_matrix(g.op, g.dir == Direction::Rev);
#pragma omp parallel for if (par) schedule(static)
        for (std::int64_t k = 0; k < blocks; ++k) {
            const std::uint64_t i = spread(static_cast<std::uint64_t>(k), holes, count);
            const Amplitude a0 = a[i], a1 = a[i | tb];
            a[i] = m[0] * a0 + m[1] * a1;
            a[i | tb] = m[2] * a0 + m[3] * a1;
        }
        return;
    }

    // Each block enumerates all control patterns with the target bit clear.
    const std::uint64_t l1 = negated_first(g.pol) ? 0 : c1b;
    const std::uint64_t l2 = negated_second(g.pol) ? 0 : c2b;
#pragma omp parallel for if (par) schedule(static)
    for (std::int64_t k = 0; k < blocks; ++k) {
        const std::uint64_t base = spread(static_cast<std::uint64_t>(k), holes, count);
        switch (g.kind) {
        case GateKind::Not: std::swap(a[base], a[base | tb]); break;
        case GateKind::Xor: std::swap(a[base | c1b], a[base | c1b | tb]); break;
        case GateKind::XorNeg: std::swap(a[base], a[base | tb]); break;
        case GateKind::Toffoli: std::swap(a[base | l1 | l2], a[base | l1 | l2 | tb]); break;
        case GateKind::OrToffoli:
            std::swap(a[base | c1b], a[base | c1b | tb]);
            std::swap(a[base | c2b], a[base | c2b | tb]);
            std::swap(a[base | c1b | c2b], a[base | c1b | c2b | tb]);
            break;
        case GateKind::PhaseToffoli: {
            // lit1 = 1, lit2 = 0, t = 0
            const std::uint64_t neg = base | l1 | (c2b ^ l2);
            a[neg] = -a[neg];
            std::swap(a[base | l1 | l2], a[base | l1 | l2 | tb]);
            break;
        }
        case GateKind::PhaseOr: {
            const std::uint64_t neg = base | c2b | (g.dir == Direction::Rev ? tb : 0);
            a[neg] = -a[neg];
            std::swap(a[base | c1b], a[base | c1b | tb]);
            std::swap(a[base | c2b], a[base | c2b | tb]);
            std::swap(a[base | c1b | c2b], a[base | c1b | c2b | tb]);
            break;
        }
        case GateKind::OneQubit: break;
        }
    }
}

StateVector apply_circuit(StateVector v, const Circuit& c)
{
    if (static_cast<int>(c.qubit_count) != v.q)
        throw std::invalid_argument("circuit and state sizes differ");
    for (const Gate& g : c.gates)
        apply_gate(v, g);
    return v;
}

StateVector apply_circuit_serial(StateVector v, const Circuit& c)
{
    if (static_cast<int>(c.qubit_count) != v.q)
        throw std::invalid_argument("circuit and state sizes differ");
    for (const Gate& g : c.gates)
        apply_gate_serial(v, g);
    return v;
}

std::pair<double, StateVector> project_and_renormalize(const StateVector& v, const std::vector<Qubit>& qubits)
{
    std::uint64_t mask = 0;
    for (Qubit q : qubits) {
        if (static_cast<int>(q) >= v.q)
            throw std::invalid_argument("projected qubit outside the state");
        mask |= bitmask(q);
    }
    StateVector out = v;
    double p = 0.0;
    for (std::uint64_t i = 0; i < v.dim(); ++i) {
        if (i & mask)
            out.amp[i] = 0.0;
        else
            p += std::norm(v.amp[i]);
    }
    if (p <= 0.0)
        throw std::domain_error("projection has zero probability");
    const double s = 1.0 / std::sqrt(p);
    for (Amplitude& a : out.amp)
        a *= s;
    return {p, out};
}

double max_abs_diff(const StateVector& a, const StateVector& b)
{
    if (a.q != b.q)
        throw std::invalid_argument("states have different sizes");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        m = std::max(m, std::abs(a.amp[i] - b.amp[i]));
    return m;
}

} // namespace schumacher
