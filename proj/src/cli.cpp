#include "schumacher/cli.hpp"

#include "schumacher/circuit_io.hpp"
#include "schumacher/combinatorics.hpp"
#include "schumacher/compiler.hpp"
#include "schumacher/fidelity.hpp"
#include "schumacher/programs.hpp"
#include "schumacher/resources.hpp"
#include "schumacher/sim_classical.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace schumacher::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int n = 4;
    std::string x;
    std::optional<std::uint64_t> y;
    std::string mode = "standard";
    std::optional<std::string> phase;
    bool two_bit = false;
    std::string out;
    bool json = false;
    std::string program = "final_schumacher";
    bool trace = false;
    std::string circuit;
    std::string reg = "X";
    std::optional<int> lambda;
    std::string engine = "permutation";
    std::vector<int> ns{16, 24, 32, 48};
};

CompileOptions compile_options(const Options& o)
{
    CompileOptions c;
    c.n = o.n;
    c.mode = parse_mode(o.mode);
    c.phase = parse_phase(o.phase.value_or("plain"));
    c.lower_two_bit = o.two_bit;
    return c;
}

BitString parse_x(const Options& o)
{
    if (o.x.empty())
        throw UsageError("--x is required");
    BitString b = BitString::parse(o.x);
    if (b.n != o.n)
        throw UsageError("--x must have exactly n digits");
    return b;
}

void write_registers(std::ostream& os, const RegisterFile& r)
{
    os << "X=" << r.X << " Y=" << r.Y << " S=" << r.S << '\n';
}

int run_rank(const Options& o, std::ostream& out)
{
    out << rank(parse_x(o)) << '\n';
    return kOk;
}

int run_unrank(const Options& o, std::ostream& out)
{
    if (!o.y)
        throw UsageError("--y is required");
    out << unrank(o.n, *o.y).str() << '\n';
    return kOk;
}

int run_interpret(const Options& o, std::ostream& out)
{
    const ProgramId p = parse_program(o.program);
    RegisterFile r;
    r.n = o.n;
    const bool inverse = p == ProgramId::TryInverse || p == ProgramId::FinalSchumacherInverse;
    if (inverse) {
        if (!o.y)
            throw UsageError("--y is required for inverse programs");
        (p == ProgramId::TryInverse ? r.Y : r.X) = static_cast<std::int64_t>(*o.y);
    } else {
        r.X = static_cast<std::int64_t>(parse_x(o).value);
    }
    TraceSink sink;
    if (o.trace)
        sink = [&](std::size_t step, const Statement& s, const RegisterFile& f) { write_trace_line(out, step, s, f); };
    const RegisterFile fin = run_program(p, r, sink);
    if (inverse)
        out << "X=" << BitString(o.n, static_cast<std::uint64_t>(fin.X)).str() << " Y=" << fin.Y << " S=" << fin.S
            << '\n';
    else
        write_registers(out, fin);
    return kOk;
}

int run_compile(const Options& o, std::ostream& out)
{
    out << serialize(compile(parse_program(o.program), compile_options(o)));
    return kOk;
}

int run_simulate(const Options& o, std::ostream& out)
{
    if (o.circuit.empty())
        throw UsageError("--circuit is required");
    std::ifstream in(o.circuit);
    if (!in)
        throw UsageError("cannot open " + o.circuit);
    const Circuit c = parse_circuit(in);
    MachineState s(c.qubit_count);
    const Register& reg = c.layout.at(o.reg);
    if (!o.x.empty())
        write_register(s, reg, BitString::parse(o.x).value);
    else if (o.y)
        write_register(s, reg, *o.y);
    s = run(c, std::move(s));
    if (o.json) {
        nlohmann::ordered_json j;
        j["sign"] = s.sign;
        for (const Register& r : c.layout.regs)
            j["registers"][r.name] = read_register(s, r);
        out << j.dump(2) << '\n';
    } else {
        for (const Register& r : c.layout.regs)
            out << r.name << '=' << read_register(s, r) << ' ';
        out << "sign=" << (s.sign > 0 ? "+1" : "-1") << '\n';
    }
    return kOk;
}

int run_verify(const Options& o, std::ostream& out)
{
    if (o.two_bit)
        throw UsageError("lowered circuits need the statevector simulator; drop --two-bit");
    if (o.n < 2 || o.n > 16)
        throw UsageError("verify supports 2 <= n <= 16");
    std::vector<PhaseMode> phases;
    if (o.phase)
        phases.push_back(parse_phase(*o.phase));
    else
        phases = {PhaseMode::Plain, PhaseMode::Modified};
    const int n = o.n;
    bool ok = true;
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    for (PhaseMode ph : phases) {
        CompileOptions co{n, parse_mode(o.mode), ph, false};
        const Circuit fwd = compile(ProgramId::FinalSchumacher, co);
        const Circuit inv = compile(ProgramId::FinalSchumacherInverse, co);
        const VerifyReport rf = exhaustive_verify(fwd, [n](std::uint64_t x) { return rank(BitString(n, x)); }, n);
        const VerifyReport ri = exhaustive_verify(inv, [n](std::uint64_t y) { return unrank(n, y).value; }, n);
        const bool mirror = fwd == invert_circuit(inv);
        const bool valid = validate(fwd).empty() && validate(inv).empty();
        const bool pass = rf.ok() && ri.ok() && mirror && valid;
        ok = ok && pass;
        if (o.json) {
            nlohmann::ordered_json j;
            j["n"] = n;
            j["mode"] = std::string(mode_name(co.mode));
            j["phase"] = std::string(phase_name(ph));
            j["forward"] = nlohmann::ordered_json::parse(report_json(rf));
            j["inverse"] = nlohmann::ordered_json::parse(report_json(ri));
            j["mirror"] = mirror;
            j["valid"] = valid;
            all.push_back(j);
        } else {
            out << "n=" << n << " mode=" << mode_name(co.mode) << " phase=" << phase_name(ph)
                << " inputs=" << rf.total << " forward=" << (rf.ok() ? "ok" : "FAIL")
                << " inverse=" << (ri.ok() ? "ok" : "FAIL") << " mirror=" << (mirror ? "ok" : "FAIL")
                << " valid=" << (valid ? "ok" : "FAIL") << '\n';
        }
    }
    if (o.json)
        out << all.dump(2) << '\n';
    return ok ? kOk : kVerifyFailed;
}

ResourceReport report_for(const CompileOptions& co)
{
    ResourceReport r = count(compile(ProgramId::FinalSchumacher, co));
    r.options = co;
    return r;
}

int run_counts(const Options& o, std::ostream& out)
{
    const ResourceReport r = report_for(compile_options(o));
    if (o.json) {
        out << report_json(r) << '\n';
    } else {
        out << "qubits " << r.qubit_count << "\ntotal " << r.total << '\n';
        for (const auto& [k, v] : r.by_kind)
            out << k << ' ' << v << '\n';
    }
    return kOk;
}

int run_sweep(const Options& o, std::ostream& out)
{
    std::vector<SweepPoint> pts;
    std::vector<std::pair<double, double>> nodes;
    for (int n : o.ns) {
        Options one = o;
        one.n = n;
        const ResourceReport r = report_for(compile_options(one));
        pts.push_back({n, r.total, r.qubit_count});
        nodes.emplace_back(n, static_cast<double>(r.total));
    }
    if (o.json) {
        nlohmann::ordered_json j;
        j["points"] = nlohmann::ordered_json::array();
        for (const SweepPoint& p : pts)
            j["points"].push_back({{"n", p.n}, {"total", p.total}, {"qubits", p.qubits}});
        if (nodes.size() >= 3)
            j["cubic_coefficient"] = fit_leading(nodes, 3);
        out << j.dump(2) << '\n';
    } else {
        out << sweep_csv(pts);
    }
    return kOk;
}

int run_fidelity(const Options& o, std::ostream& out)
{
    const Ensemble e = example_ensemble();
    FidelityOptions fo;
    fo.engine = o.engine == "circuit" ? Engine::Circuit : Engine::Permutation;
    if (o.engine != "circuit" && o.engine != "permutation")
        throw UsageError("--engine must be permutation or circuit");
    fo.mode = parse_mode(o.mode);
    fo.phase = parse_phase(o.phase.value_or("plain"));
    const std::vector<FidelityResult> rows =
        o.lambda ? std::vector<FidelityResult>{expected_fidelity(e, o.n, *o.lambda, fo)} : fidelity_sweep(e, o.n, fo);
    const DensityMatrix2 rho = density_from_ensemble(e);
    if (o.json) {
        const Eigen2 d = diagonalize(rho);
        nlohmann::ordered_json j;
        j["lambda_max"] = d.lambda_max;
        j["lambda_min"] = d.lambda_min;
        j["theta"] = d.theta;
        j["vn_entropy"] = vn_entropy(rho);
        j["shannon_entropy"] = shannon_entropy(e.probs);
        j["typical_weight"] = typical_weight(e, o.n);
        j["rows"] = nlohmann::ordered_json::array();
        for (const FidelityResult& r : rows)
            j["rows"].push_back({{"n", r.n},
                                 {"lambda", r.lambda_n},
                                 {"fidelity", r.expected_fidelity},
                                 {"postselected", r.postselected},
                                 {"method", r.method}});
        out << j.dump(2) << '\n';
    } else {
        out << "n,lambda,fidelity,postselected\n" << std::setprecision(12);
        for (const FidelityResult& r : rows)
            out << r.n << ',' << r.lambda_n << ',' << r.expected_fidelity << ',' << r.postselected << '\n';
    }
    return kOk;
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Enumerative quantum data compression: compiler and verification tools"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--n", o.n, "block length");
        s->add_option("--out", o.out, "write output to FILE");
        s->add_flag("--json", o.json, "JSON output");
    };
    auto compile_flags = [&](CLI::App* s) {
        s->add_option("--mode", o.mode, "standard | space-efficient");
        s->add_option("--phase", o.phase, "plain | modified");
        s->add_flag("--two-bit", o.two_bit, "lower to one- and two-qubit gates");
    };

    CLI::App* rank_cmd = app.add_subcommand("rank", "print rank of --x");
    common(rank_cmd);
    rank_cmd->add_option("--x", o.x, "bit string, most significant first");

    CLI::App* unrank_cmd = app.add_subcommand("unrank", "print the string of rank --y");
    common(unrank_cmd);
    unrank_cmd->add_option("--y", o.y, "rank");

    CLI::App* interp = app.add_subcommand("interpret", "run a pseudocode program");
    common(interp);
    interp->add_option("--program", o.program, "first_try | try_inverse | final_schumacher | final_schumacher_inverse");
    interp->add_option("--x", o.x, "input string for forward programs");
    interp->add_option("--y", o.y, "input rank for inverse programs");
    interp->add_flag("--trace", o.trace, "print registers after each statement");

    CLI::App* comp = app.add_subcommand("compile", "emit a circuit");
    common(comp);
    compile_flags(comp);
    comp->add_option("--program", o.program, "final_schumacher | final_schumacher_inverse");

    CLI::App* sim = app.add_subcommand("simulate", "run a circuit file on a basis input");
    common(sim);
    sim->add_option("--circuit", o.circuit, "circuit file")->required();
    sim->add_option("--x", o.x, "input bits for --reg, most significant first");
    sim->add_option("--y", o.y, "input value for --reg");
    sim->add_option("--reg", o.reg, "input register");

    CLI::App* ver = app.add_subcommand("verify", "exhaustive circuit checks");
    common(ver);
    compile_flags(ver);

    CLI::App* cnt = app.add_subcommand("counts", "resource report");
    common(cnt);
    compile_flags(cnt);

    CLI::App* sw = app.add_subcommand("sweep", "resource totals over n");
    common(sw);
    compile_flags(sw);
    sw->add_option("--ns", o.ns, "block lengths")->delimiter(',');

    CLI::App* fid = app.add_subcommand("fidelity", "fidelity sweep for the example ensemble");
    common(fid);
    fid->add_option("--lambda", o.lambda, "kept qubits (default: all)");
    fid->add_option("--engine", o.engine, "permutation | circuit");
    fid->add_option("--mode", o.mode, "compile mode for the circuit engine");
    fid->add_option("--phase", o.phase, "phase setting for the circuit engine");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    std::ostringstream buf;
    int code = kOk;
    try {
        CLI::App* s = app.get_subcommands().front();
        const std::string name = s->get_name();
        if (name == "rank")
            code = run_rank(o, buf);
        else if (name == "unrank")
            code = run_unrank(o, buf);
        else if (name == "interpret")
            code = run_interpret(o, buf);
        else if (name == "compile")
            code = run_compile(o, buf);
        else if (name == "simulate")
            code = run_simulate(o, buf);
        else if (name == "verify")
            code = run_verify(o, buf);
        else if (name == "counts")
            code = run_counts(o, buf);
        else if (name == "sweep")
            code = run_sweep(o, buf);
        else
            code = run_fidelity(o, buf);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IntegrityError& e) {
        err << "integrity failure: " << e.what() << '\n';
        return kVerifyFailed;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }

    if (o.out.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(o.out);
        if (!f) {
            err << "error: cannot write " << o.out << '\n';
            return kUsage;
        }
        f << buf.str();
    }
    return code;
}

} // namespace schumacher::cli
