#include "schumacher/resources.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace schumacher {

std::string gate_kind_name(const Gate& g)
{
    switch (g.kind) {
    case GateKind::Not: return "x";
    case GateKind::Xor: return "cx";
    case GateKind::XorNeg: return "ncx";
    case GateKind::Toffoli: return "ccx";
    case GateKind::OrToffoli: return "orx";
    case GateKind::PhaseToffoli: return "pccx";
    case GateKind::PhaseOr: return "porx";
    case GateKind::OneQubit: return "u";
    }
    return "?";
}

ResourceReport count(const Circuit& c)
{
    ResourceReport r;
    r.qubit_count = c.qubit_count;
    std::vector<std::string> open;
    std::size_t next_marker = 0;
    for (std::size_t i = 0; i <= c.gates.size(); ++i) {
        while (next_marker < c.spans.size() && c.spans[next_marker].position == i) {
            const SpanMarker& m = c.spans[next_marker++];
            if (m.begin)
                open.push_back(m.name);
            else if (!open.empty())
                open.pop_back();
        }
        if (i == c.gates.size())
            break;
        const Gate& g = c.gates[i];
        r.by_kind[gate_kind_name(g)]++;
        r.total++;
        switch (g.controls()) {
        case 0: r.one_qubit++; break;
        case 1: r.two_qubit++; break;
        default: r.three_qubit++; break;
        }
        r.exclusive[open.empty() ? std::string() : open.back()]++;
        std::set<std::string> seen(open.begin(), open.end());
        for (const std::string& s : seen)
            r.inclusive[s]++;
    }
    return r;
}

std::string report_json(const ResourceReport& r)
{
    nlohmann::ordered_json j;
    if (r.options) {
        j["options"] = {{"n", r.options->n},
                        {"mode", std::string(mode_name(r.options->mode))},
                        {"phase", std::string(phase_name(r.options->phase))},
                        {"two_bit", r.options->lower_two_bit}};
    }
    j["qubit_count"] = r.qubit_count;
    j["total"] = r.total;
    j["one_qubit"] = r.one_qubit;
    j["two_qubit"] = r.two_qubit;
    j["three_qubit"] = r.three_qubit;
    j["by_kind"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.by_kind)
        j["by_kind"][k] = v;
    j["spans_exclusive"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.exclusive)
        j["spans_exclusive"][k.empty() ? "(none)" : k] = v;
    j["spans_inclusive"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inclusive)
        j["spans_inclusive"][k] = v;
    return j.dump(2);
}

std::string sweep_csv(const std::vector<SweepPoint>& pts)
{
    std::ostringstream os;
    os << "n,total,qubits\n";
    for (const SweepPoint& p : pts)
        os << p.n << ',' << p.total << ',' << p.qubits << '\n';
    return os.str();
}

double fit_leading(const std::vector<std::pair<double, double>>& nodes, int degree)
{
    if (degree < 0)
        throw std::invalid_argument("degree must be nonnegative");
    std::set<double> distinct;
    double scale = 0.0;
    for (const auto& [x, y] : nodes) {
        distinct.insert(x);
        scale = std::max(scale, std::abs(x));
    }
    const int terms = std::min(degree + 1, static_cast<int>(distinct.size()));
    if (terms < 1 || scale == 0.0 || (degree >= 2 && distinct.size() < 3))
        throw std::invalid_argument("fit_leading needs at least three distinct nodes");
    Eigen::MatrixXd A(static_cast<Eigen::Index>(nodes.size()), terms);
    Eigen::VectorXd b(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double u = nodes[i].first / scale;
        for (int t = 0; t < terms; ++t)
            A(static_cast<Eigen::Index>(i), t) = std::pow(u, degree - t);
        b(static_cast<Eigen::Index>(i)) = nodes[i].second;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < terms)
        throw std::invalid_argument("fit_leading system is degenerate");
    const Eigen::VectorXd coef = qr.solve(b);
    return coef(0) / std::pow(scale, degree);
}

} // namespace schumacher
