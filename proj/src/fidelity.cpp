#include "schumacher/fidelity.hpp"

#include "schumacher/combinatorics.hpp"
#include "schumacher/sim_state.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

namespace schumacher {

void Ensemble::validate() const
{
    if (states.empty() || states.size() != probs.size())
        throw std::invalid_argument("ensemble needs one probability per state");
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0)
            throw std::invalid_argument("ensemble probability is negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("ensemble probabilities do not sum to 1");
    for (const auto& [a, b] : states)
        if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12)
            throw std::invalid_argument("ensemble state is not normalized");
}

Ensemble example_ensemble()
{
    const double r = 1.0 / std::sqrt(2.0);
    return {{{1.0, 0.0}, {r, r}}, {0.5, 0.5}};
}

DensityMatrix2 density_from_ensemble(const Ensemble& e)
{
    e.validate();
    DensityMatrix2 rho;
    for (std::size_t i = 0; i < e.states.size(); ++i) {
        const auto [a, b] = e.states[i];
        const double p = e.probs[i];
        rho.m[0] += p * a * std::conj(a);
        rho.m[1] += p * a * std::conj(b);
        rho.m[2] += p * b * std::conj(a);
        rho.m[3] += p * b * std::conj(b);
    }
    return rho;
}

Eigen2 diagonalize(const DensityMatrix2& rho)
{
    const double a = rho(0, 0).real(), d = rho(1, 1).real();
    const Complex b = rho(1, 0);
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(b));
    Eigen2 out;
    out.lambda_max = mid + rad;
    out.lambda_min = mid - rad;
    out.theta = 0.5 * std::atan2(2.0 * std::abs(b), a - d);
    out.phi = std::abs(b) > 0.0 ? std::arg(b) : 0.0;
    return out;
}

std::pair<Complex, Complex> Eigen2::to_eigenbasis(const std::pair<Complex, Complex>& psi) const
{
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex ph = std::polar(1.0, -phi);
    return {c * psi.first + ph * s * psi.second, -s * psi.first + ph * c * psi.second};
}

std::pair<Complex, Complex> Eigen2::from_eigenbasis(const std::pair<Complex, Complex>& v) const
{
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex ph = std::polar(1.0, phi);
    return {c * v.first - s * v.second, ph * (s * v.first + c * v.second)};
}

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Sum over discarded patterns e of |<psi_{.,0} | psi_{.,e}>|^2, with the kept
// bits the `lambda` low-order index bits.
double traced_overlap(const std::vector<Amplitude>& psi, int lambda, double& p0)
{
    const std::size_t kept = std::size_t{1} << lambda;
    const std::size_t groups = psi.size() / kept;
    p0 = 0.0;
    for (std::size_t k = 0; k < kept; ++k)
        p0 += std::norm(psi[k]);
    double f = 0.0;
    for (std::size_t e = 0; e < groups; ++e) {
        Amplitude s = 0.0;
        const Amplitude* col = psi.data() + e * kept;
        for (std::size_t k = 0; k < kept; ++k)
            s += std::conj(psi[k]) * col[k];
        f += std::norm(s);
    }
    return f;
}

struct Setup {
    int n;
    std::vector<int> lambdas;
    std::vector<std::pair<Complex, Complex>> eig; // per ensemble state
    std::vector<std::uint64_t> ranks;
    Circuit encoder;
    std::uint64_t strings = 1;
    std::size_t m = 0;

    Setup(const Ensemble& e, int n_, std::vector<int> lambdas_, const FidelityOptions& opts)
        : n(n_), lambdas(std::move(lambdas_))
    {
        e.validate();
        if (n < 1 || n > kMaxFidelityN)
            throw std::out_of_range("fidelity enumeration supports 1 <= n <= 10");
        for (int lambda : lambdas)
            if (lambda < 1 || lambda > n)
                throw std::out_of_range("kept qubit count must lie in [1, n]");
        const Eigen2 basis = diagonalize(density_from_ensemble(e));
        for (const auto& s : e.states)
            eig.push_back(basis.to_eigenbasis(s));
        m = e.states.size();
        for (int i = 0; i < n; ++i)
            strings *= m;
        if (opts.engine == Engine::Permutation) {
            ranks.resize(std::size_t{1} << n);
            for (std::uint64_t x = 0; x < ranks.size(); ++x)
                ranks[x] = rank(BitString(n, x));
        } else {
            if (n < 2)
                throw std::out_of_range("circuit engine needs n >= 2");
            encoder = compile(ProgramId::FinalSchumacher, {n, opts.mode, opts.phase, false});
            if (static_cast<int>(encoder.qubit_count) > kMaxStateQubits)
                throw std::out_of_range("compiled coder exceeds the statevector qubit cap");
        }
    }

    void digits_of(std::uint64_t s, std::vector<std::size_t>& digits) const
    {
        for (int i = 0; i < n; ++i) {
            digits[static_cast<std::size_t>(i)] = s % m;
            s /= m;
        }
    }

    std::vector<Amplitude> input(const std::vector<std::size_t>& digits) const
    {
        std::vector<Amplitude> a{1.0};
        for (int i = 0; i < n; ++i) {
            const auto& [c0, c1] = eig[digits[static_cast<std::size_t>(i)]];
            std::vector<Amplitude> next(a.size() * 2);
            for (std::size_t j = 0; j < a.size(); ++j) {
                next[j] = a[j] * c0;
                next[j + a.size()] = a[j] * c1;
            }
            a.swap(next);
        }
        return a;
    }

    // Fidelity and discarded-zero probability of one signal string, per kept count.
    void one(const std::vector<std::size_t>& digits, double p, std::vector<double>& f,
             std::vector<double>& ps) const
    {
        const std::vector<Amplitude> a = input(digits);
        std::vector<Amplitude> coded;
        if (!ranks.empty()) {
            coded.resize(a.size());
            for (std::size_t x = 0; x < a.size(); ++x)
                coded[ranks[x]] = a[x];
        } else {
            StateVector v(static_cast<int>(encoder.qubit_count));
            std::copy(a.begin(), a.end(), v.amp.begin());
            coded = apply_circuit(std::move(v), encoder).amp;
        }
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            double p0 = 0.0;
            f[i] += p * traced_overlap(coded, lambdas[i], p0);
            ps[i] += p * p0;
        }
    }
};

double string_prob(const Ensemble& e, const std::vector<std::size_t>& digits)
{
    double p = 1.0;
    for (std::size_t d : digits)
        p *= e.probs[d];
    return p;
}

std::vector<FidelityResult> finish(const Setup& s, const std::vector<double>& f, const std::vector<double>& ps,
                                   Engine engine)
{
    std::vector<FidelityResult> out;
    for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
        FidelityResult r;
        r.n = s.n;
        r.lambda_n = s.lambdas[i];
        r.expected_fidelity = f[i];
        r.postselected = ps[i];
        r.method = engine == Engine::Permutation ? "exact_enumeration" : "circuit_statevector";
        out.push_back(r);
    }
    return out;
}

std::vector<FidelityResult> run_serial(const Ensemble& e, int n, std::vector<int> lambdas, const FidelityOptions& opts)
{
    const Setup s(e, n, std::move(lambdas), opts);
    std::vector<std::size_t> digits(static_cast<std::size_t>(n));
    std::vector<double> f(s.lambdas.size()), ps(s.lambdas.size());
    for (std::uint64_t i = 0; i < s.strings; ++i) {
        s.digits_of(i, digits);
        const double p = string_prob(e, digits);
        if (p != 0.0)
            s.one(digits, p, f, ps);
    }
    return finish(s, f, ps, opts.engine);
}

std::vector<FidelityResult> run_parallel(const Ensemble& e, int n, std::vector<int> lambdas,
                                         const FidelityOptions& opts)
{
    const Setup s(e, n, std::move(lambdas), opts);
    const auto total = static_cast<std::int64_t>(s.strings);
    const std::size_t L = s.lambdas.size();
    std::vector<double> f(L), ps(L);
    // The circuit engine parallelizes inside the statevector kernels instead.
#pragma omp parallel if (opts.engine == Engine::Permutation)
    {
        std::vector<double> lf(L), lps(L);
        std::vector<std::size_t> digits(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < total; ++i) {
            s.digits_of(static_cast<std::uint64_t>(i), digits);
            const double p = string_prob(e, digits);
            if (p != 0.0)
                s.one(digits, p, lf, lps);
        }
#pragma omp critical
        for (std::size_t i = 0; i < L; ++i) {
            f[i] += lf[i];
            ps[i] += lps[i];
        }
    }
    return finish(s, f, ps, opts.engine);
}

std::vector<int> all_lambdas(int n)
{
    std::vector<int> l;
    for (int i = 1; i <= n; ++i)
        l.push_back(i);
    return l;
}

} // namespace

std::string_view engine_name(Engine e) { return e == Engine::Permutation ? "permutation" : "circuit"; }

double vn_entropy(const DensityMatrix2& rho)
{
    const Eigen2 d = diagonalize(rho);
    return -(xlog2x(d.lambda_max) + xlog2x(std::max(d.lambda_min, 0.0)));
}

double shannon_entropy(const std::vector<double>& p)
{
    double h = 0.0;
    for (double x : p)
        h -= xlog2x(x);
    return h;
}

double typical_weight(const Ensemble& e, int n)
{
    const DensityMatrix2 rho = density_from_ensemble(e);
    const Eigen2 d = diagonalize(rho);
    const double h = vn_entropy(rho);
    double w = 0.0;
    for (int k = 0; k <= n; ++k)
        if (static_cast<double>(k) / n < h)
            w += static_cast<double>(binom(n, k)) * std::pow(d.lambda_max, n - k) * std::pow(d.lambda_min, k);
    return w;
}

FidelityResult expected_fidelity_serial(const Ensemble& e, int n, int lambda, const FidelityOptions& opts)
{
    return run_serial(e, n, {lambda}, opts).front();
}

FidelityResult expected_fidelity(const Ensemble& e, int n, int lambda, const FidelityOptions& opts)
{
    return run_parallel(e, n, {lambda}, opts).front();
}

std::vector<FidelityResult> fidelity_sweep(const Ensemble& e, int n, const FidelityOptions& opts)
{
    return run_parallel(e, n, all_lambdas(n), opts);
}

std::vector<FidelityResult> fidelity_sweep_serial(const Ensemble& e, int n, const FidelityOptions& opts)
{
    return run_serial(e, n, all_lambdas(n), opts);
}

} // namespace schumacher
