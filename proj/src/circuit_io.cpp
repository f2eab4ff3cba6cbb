#include "schumacher/circuit_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace schumacher {

namespace {

constexpr std::array<std::pair<OneQubitOp, std::string_view>, 7> kOneQubitNames{{
    {OneQubitOp::H, "h"},
    {OneQubitOp::T, "t"},
    {OneQubitOp::TH, "th"},
    {OneQubitOp::XH, "xh"},
    {OneQubitOp::RY, "ry"},
    {OneQubitOp::RY_X, "ryx"},
    {OneQubitOp::X_RY, "xry"},
}};

const char* pol_flags(Polarity p) { return p == Polarity::NP ? "-+" : "--"; }

const char* dir_name(Direction d) { return d == Direction::Fwd ? "fwd" : "rev"; }

std::string flags_of(const Register& r)
{
    std::string s;
    auto add = [&](const char* f) {
        if (!s.empty())
            s += ',';
        s += f;
    };
    if (r.is_signed)
        add("signed");
    if (r.init0)
        add("init0");
    if (r.final0)
        add("final0");
    return s.empty() ? "-" : s;
}

struct LineParser {
    std::vector<std::string_view> tok;
    std::size_t line = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
    }

    void expect(std::size_t count) const
    {
        if (tok.size() != count)
            fail("expected " + std::to_string(count - 1) + " operands for '" + std::string(tok[0]) + "'");
    }

    std::uint32_t num(std::size_t i) const
    {
        std::uint32_t v = 0;
        auto s = tok[i];
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            fail("bad integer '" + std::string(s) + "'");
        return v;
    }

    Direction dir(std::size_t i) const
    {
        if (tok[i] == "fwd")
            return Direction::Fwd;
        if (tok[i] == "rev")
            return Direction::Rev;
        fail("bad direction '" + std::string(tok[i]) + "'");
    }

    Polarity pol(std::size_t i) const
    {
        if (tok[i] == "-+")
            return Polarity::NP;
        if (tok[i] == "--")
            return Polarity::NN;
        fail("bad polarity flags '" + std::string(tok[i]) + "'");
    }

    OneQubitOp op(std::size_t i) const
    {
        for (const auto& [o, name] : kOneQubitNames)
            if (name == tok[i])
                return o;
        fail("unknown one-qubit gate '" + std::string(tok[i]) + "'");
    }
};

std::vector<std::string_view> split(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace

std::string_view one_qubit_name(OneQubitOp op)
{
    for (const auto& [o, name] : kOneQubitNames)
        if (o == op)
            return name;
    return "?";
}

void write_circuit(std::ostream& os, const Circuit& c, bool with_spans)
{
    os << "qubits " << c.qubit_count << '\n';
    for (const Register& r : c.layout.regs)
        os << "register " << r.name << ' ' << r.lo << ' ' << r.hi << ' ' << flags_of(r) << '\n';
    std::size_t next = 0;
    auto flush_spans = [&](std::size_t pos) {
        while (next < c.spans.size() && c.spans[next].position == pos) {
            if (with_spans)
                os << (c.spans[next].begin ? "begin " : "end ") << c.spans[next].name << '\n';
            ++next;
        }
    };
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        flush_spans(i);
        const Gate& g = c.gates[i];
        switch (g.kind) {
        case GateKind::Not: os << "x " << g.target; break;
        case GateKind::Xor: os << "cx " << g.c1 << ' ' << g.target; break;
        case GateKind::XorNeg: os << "ncx " << g.c1 << ' ' << g.target; break;
        case GateKind::Toffoli:
            if (g.pol == Polarity::PP)
                os << "ccx ";
            else
                os << "ccx! " << pol_flags(g.pol) << ' ';
            os << g.c1 << ' ' << g.c2 << ' ' << g.target;
            break;
        case GateKind::OrToffoli: os << "orx " << g.c1 << ' ' << g.c2 << ' ' << g.target; break;
        case GateKind::PhaseToffoli:
            if (g.pol == Polarity::PP)
                os << "pccx ";
            else
                os << "pccx! " << pol_flags(g.pol) << ' ';
            os << dir_name(g.dir) << ' ' << g.c1 << ' ' << g.c2 << ' ' << g.target;
            break;
        case GateKind::PhaseOr:
            os << "porx " << dir_name(g.dir) << ' ' << g.c1 << ' ' << g.c2 << ' ' << g.target;
            break;
        case GateKind::OneQubit:
            os << (g.dir == Direction::Fwd ? "u " : "udg ") << one_qubit_name(g.op) << ' ' << g.target;
            break;
        }
        os << '\n';
    }
    flush_spans(c.gates.size());
}

std::string serialize(const Circuit& c, bool with_spans)
{
    std::ostringstream os;
    write_circuit(os, c, with_spans);
    return os.str();
}

Circuit parse_circuit(std::istream& is)
{
    Circuit c;
    bool have_qubits = false;
    std::string raw;
    LineParser lp;
    while (std::getline(is, raw)) {
        ++lp.line;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        lp.tok = split(line);
        if (lp.tok.empty())
            continue;
        const std::string_view op = lp.tok[0];
        if (op == "qubits") {
            lp.expect(2);
            c.qubit_count = lp.num(1);
            have_qubits = true;
        } else if (op == "register") {
            lp.expect(5);
            Register r;
            r.name = std::string(lp.tok[1]);
            r.lo = lp.num(2);
            r.hi = lp.num(3);
            if (lp.tok[4] != "-") {
                std::string_view f = lp.tok[4];
                while (!f.empty()) {
                    auto comma = f.find(',');
                    auto flag = f.substr(0, comma);
                    if (flag == "signed")
                        r.is_signed = true;
                    else if (flag == "init0")
                        r.init0 = true;
                    else if (flag == "final0")
                        r.final0 = true;
                    else
                        lp.fail("unknown register flag '" + std::string(flag) + "'");
                    f = comma == std::string_view::npos ? std::string_view{} : f.substr(comma + 1);
                }
            }
            c.layout.regs.push_back(std::move(r));
        } else if (op == "begin" || op == "end") {
            lp.expect(2);
            c.spans.push_back({c.gates.size(), op == "begin", std::string(lp.tok[1])});
        } else if (op == "x") {
            lp.expect(2);
            c.add(Gate::not_gate(lp.num(1)));
        } else if (op == "cx") {
            lp.expect(3);
            c.add(Gate::xor_gate(lp.num(1), lp.num(2)));
        } else if (op == "ncx") {
            lp.expect(3);
            c.add(Gate::xor_neg(lp.num(1), lp.num(2)));
        } else if (op == "ccx") {
            lp.expect(4);
            c.add(Gate::toffoli(lp.num(1), lp.num(2), lp.num(3)));
        } else if (op == "ccx!") {
            lp.expect(5);
            c.add(Gate::toffoli(lp.num(2), lp.num(3), lp.num(4), lp.pol(1)));
        } else if (op == "orx") {
            lp.expect(4);
            c.add(Gate::or_toffoli(lp.num(1), lp.num(2), lp.num(3)));
        } else if (op == "pccx") {
            lp.expect(5);
            c.add(Gate::phase_toffoli(lp.num(2), lp.num(3), lp.num(4), lp.dir(1)));
        } else if (op == "pccx!") {
            lp.expect(6);
            c.add(Gate::phase_toffoli(lp.num(3), lp.num(4), lp.num(5), lp.dir(2), lp.pol(1)));
        } else if (op == "porx") {
            lp.expect(5);
            c.add(Gate::phase_or(lp.num(2), lp.num(3), lp.num(4), lp.dir(1)));
        } else if (op == "u" || op == "udg") {
            lp.expect(3);
            c.add(Gate::one_qubit(lp.op(1), lp.num(2), op == "udg"));
        } else {
            lp.fail("unknown directive '" + std::string(op) + "'");
        }
    }
    if (!have_qubits)
        throw std::invalid_argument("missing 'qubits' header");
    return c;
}

Circuit parse_circuit(std::string_view text)
{
    std::istringstream is{std::string(text)};
    return parse_circuit(is);
}

} // namespace schumacher
