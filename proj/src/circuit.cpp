#include "schumacher/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace schumacher {

Gate Gate::not_gate(Qubit t)
{
    Gate g;
    g.kind = GateKind::Not;
    g.target = t;
    return g;
}

Gate Gate::xor_gate(Qubit c, Qubit t)
{
    Gate g;
    g.kind = GateKind::Xor;
    g.c1 = c;
    g.target = t;
    return g;
}

Gate Gate::xor_neg(Qubit c, Qubit t)
{
    Gate g = xor_gate(c, t);
    g.kind = GateKind::XorNeg;
    return g;
}

Gate Gate::toffoli(Qubit c1, Qubit c2, Qubit t, Polarity pol)
{
    Gate g;
    g.kind = GateKind::Toffoli;
    g.pol = pol;
    g.c1 = c1;
    g.c2 = c2;
    g.target = t;
    return g;
}

Gate Gate::or_toffoli(Qubit c1, Qubit c2, Qubit t)
{
    Gate g = toffoli(c1, c2, t);
    g.kind = GateKind::OrToffoli;
    return g;
}

Gate Gate::phase_toffoli(Qubit c1, Qubit c2, Qubit t, Direction d, Polarity pol)
{
    Gate g = toffoli(c1, c2, t, pol);
    g.kind = GateKind::PhaseToffoli;
    g.dir = d;
    return g;
}

Gate Gate::phase_or(Qubit c1, Qubit c2, Qubit t, Direction d)
{
    Gate g = toffoli(c1, c2, t);
    g.kind = GateKind::PhaseOr;
    g.dir = d;
    return g;
}

Gate Gate::one_qubit(OneQubitOp op, Qubit q, bool adjoint)
{
    Gate g;
    g.kind = GateKind::OneQubit;
    g.op = op;
    g.target = q;
    g.dir = adjoint ? Direction::Rev : Direction::Fwd;
    return g;
}

int Gate::controls() const
{
    switch (kind) {
    case GateKind::Not:
    case GateKind::OneQubit: return 0;
    case GateKind::Xor:
    case GateKind::XorNeg: return 1;
    default: return 2;
    }
}

bool negated_first(Polarity p) { return p != Polarity::PP; }
bool negated_second(Polarity p) { return p == Polarity::NN; }

const Register* RegisterLayout::find(std::string_view name) const
{
    for (const Register& r : regs)
        if (r.name == name)
            return &r;
    return nullptr;
}

const Register& RegisterLayout::at(std::string_view name) const
{
    if (const Register* r = find(name))
        return *r;
    throw std::out_of_range("no register named " + std::string(name));
}

Qubit RegisterLayout::total() const
{
    Qubit t = 0;
    for (const Register& r : regs)
        t += r.size();
    return t;
}

void Circuit::begin_span(std::string name) { spans.push_back({gates.size(), true, std::move(name)}); }

void Circuit::end_span(std::string name) { spans.push_back({gates.size(), false, std::move(name)}); }

void Circuit::append(const Circuit& other)
{
    const std::size_t base = gates.size();
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    for (const SpanMarker& m : other.spans)
        spans.push_back({base + m.position, m.begin, m.name});
}

Gate inverse_gate(Gate g)
{
    if (g.kind == GateKind::PhaseToffoli || g.kind == GateKind::PhaseOr || g.kind == GateKind::OneQubit)
        g.dir = g.dir == Direction::Fwd ? Direction::Rev : Direction::Fwd;
    return g;
}

Circuit invert_circuit(const Circuit& c)
{
    Circuit out;
    out.qubit_count = c.qubit_count;
    out.layout = c.layout;
    out.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
        out.gates.push_back(inverse_gate(*it));
    const std::size_t total = c.gates.size();
    out.spans.reserve(c.spans.size());
    for (auto it = c.spans.rbegin(); it != c.spans.rend(); ++it)
        out.spans.push_back({total - it->position, !it->begin, it->name});
    return out;
}

std::vector<std::string> validate(const Circuit& c)
{
    std::vector<std::string> diags;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        const std::string where = "gate " + std::to_string(i) + ": ";
        const int k = g.controls();
        if (g.target >= c.qubit_count)
            diags.push_back(where + "target out of range");
        if (k >= 1 && g.c1 >= c.qubit_count)
            diags.push_back(where + "control out of range");
        if (k == 2 && g.c2 >= c.qubit_count)
            diags.push_back(where + "second control out of range");
        if (k >= 1 && g.c1 == g.target)
            diags.push_back(where + "control equals target");
        if (k == 2 && g.c2 == g.target)
            diags.push_back(where + "second control equals target");
        if (k == 2 && g.c1 == g.c2)
            diags.push_back(where + "controls coincide");
        if (k < 2 && g.pol != Polarity::PP)
            diags.push_back(where + "polarity on a gate without two controls");
        if (g.kind == GateKind::OrToffoli && g.pol != Polarity::PP)
            diags.push_back(where + "OR gate carries a polarity");
    }
    std::vector<std::string> open;
    std::size_t last = 0;
    for (const SpanMarker& m : c.spans) {
        if (m.position > c.gates.size() || m.position < last)
            diags.push_back("span marker " + m.name + " out of order");
        last = m.position;
        if (m.begin) {
            open.push_back(m.name);
        } else if (open.empty() || open.back() != m.name) {
            diags.push_back("unbalanced span end " + m.name);
        } else {
            open.pop_back();
        }
    }
    for (const std::string& name : open)
        diags.push_back("unclosed span " + name);
    if (!c.layout.regs.empty()) {
        std::vector<int> cover(c.qubit_count, 0);
        for (const Register& r : c.layout.regs) {
            if (r.lo > r.hi || r.hi > c.qubit_count) {
                diags.push_back("register " + r.name + " out of range");
                continue;
            }
            for (Qubit q = r.lo; q < r.hi; ++q)
                ++cover[q];
        }
        if (std::any_of(cover.begin(), cover.end(), [](int v) { return v != 1; }))
            diags.push_back("registers do not partition the qubits");
    }
    return diags;
}

} // namespace schumacher
