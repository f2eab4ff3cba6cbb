#include "schumacher/compiler.hpp"

namespace schumacher {

namespace {

using Op = OneQubitOp;

struct Slot {
    Op op;
    bool adjoint;
};

void plain_and(std::vector<Gate>& out, Qubit a, bool neg_a, Qubit b, bool neg_b, Qubit t, bool or_form)
{
    const int sa = neg_a ? -1 : 1;
    const int sb = neg_b ? -1 : 1;
    auto tp = [&](Qubit q, int s) { out.push_back(Gate::one_qubit(Op::T, q, s < 0)); };
    auto cx = [&](Qubit c, Qubit x) { out.push_back(Gate::xor_gate(c, x)); };
    out.push_back(Gate::one_qubit(Op::TH, t));
    tp(b, sb);
    cx(b, t);
    tp(t, -sb);
    cx(b, t);
    cx(a, b);
    tp(b, -sa * sb);
    cx(b, t);
    tp(t, sa * sb);
    cx(b, t);
    cx(a, b);
    tp(a, sa);
    cx(a, t);
    tp(t, -sa);
    cx(a, t);
    out.push_back(Gate::one_qubit(or_form ? Op::XH : Op::H, t));
}

void phase_sequence(std::vector<Gate>& out, Qubit c1, Qubit c2, Qubit t, const Slot (&s)[4])
{
    auto u = [&](const Slot& sl) { out.push_back(Gate::one_qubit(sl.op, t, sl.adjoint)); };
    u(s[0]);
    out.push_back(Gate::xor_gate(c2, t));
    u(s[1]);
    out.push_back(Gate::xor_gate(c1, t));
    u(s[2]);
    out.push_back(Gate::xor_gate(c2, t));
    u(s[3]);
}

constexpr Slot kAndPP[4] = {{Op::RY, true}, {Op::RY, true}, {Op::RY, false}, {Op::RY, false}};
constexpr Slot kAndNP[4] = {{Op::RY, true}, {Op::RY, true}, {Op::RY_X, false}, {Op::RY, false}};
constexpr Slot kAndNN[4] = {{Op::RY, true}, {Op::X_RY, true}, {Op::RY_X, false}, {Op::RY_X, false}};
constexpr Slot kOrFwd[4] = {{Op::RY, true}, {Op::X_RY, true}, {Op::RY_X, false}, {Op::RY, true}};
constexpr Slot kOrRev[4] = {{Op::X_RY, true}, {Op::X_RY, true}, {Op::RY_X, false}, {Op::RY_X, false}};

void lower_gate(std::vector<Gate>& out, const Gate& g)
{
    switch (g.kind) {
    case GateKind::Toffoli:
        plain_and(out, g.c1, negated_first(g.pol), g.c2, negated_second(g.pol), g.target, false);
        return;
    case GateKind::OrToffoli:
        plain_and(out, g.c1, true, g.c2, true, g.target, true);
        return;
    case GateKind::PhaseToffoli:
        switch (g.pol) {
        case Polarity::PP: phase_sequence(out, g.c1, g.c2, g.target, kAndPP); return;
        case Polarity::NP: phase_sequence(out, g.c1, g.c2, g.target, kAndNP); return;
        case Polarity::NN: phase_sequence(out, g.c1, g.c2, g.target, kAndNN); return;
        }
        return;
    case GateKind::PhaseOr:
        phase_sequence(out, g.c1, g.c2, g.target, g.dir == Direction::Fwd ? kOrFwd : kOrRev);
        return;
    default:
        out.push_back(g);
    }
}

} // namespace

Circuit lower_two_bit(const Circuit& c)
{
    Circuit out;
    out.qubit_count = c.qubit_count;
    out.layout = c.layout;
    std::vector<std::size_t> position(c.gates.size() + 1, 0);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        position[i] = out.gates.size();
        lower_gate(out.gates, c.gates[i]);
    }
    position[c.gates.size()] = out.gates.size();
    for (const SpanMarker& m : c.spans)
        out.spans.push_back({position[m.position], m.begin, m.name});
    return out;
}

} // namespace schumacher
