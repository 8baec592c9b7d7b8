#include "grnevo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include <Eigen/LU>

#include "grnevo/format.hpp"

namespace grnevo {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

InitialState InitialState::uniform(int genes, double level)
{
    return {Eigen::VectorXd::Constant(genes, level), Eigen::VectorXd::Constant(genes, level)};
}

void InitialState::set(int gene, double level)
{
    mrna(gene) = level;
    protein(gene) = level;
}

std::vector<double> SimulationTrace::protein_series(int gene) const
{
    std::vector<double> out(samples());
    for (std::size_t t = 0; t < out.size(); ++t) {
        out[t] = protein(static_cast<Eigen::Index>(t), gene);
    }
    return out;
}

std::vector<double> SimulationTrace::mrna_series(int gene) const
{
    std::vector<double> out(samples());
    for (std::size_t t = 0; t < out.size(); ++t) {
        out[t] = mrna(static_cast<Eigen::Index>(t), gene);
    }
    return out;
}

GrnSystem::GrnSystem(const GrnParameters& params, double protein_floor)
    : genes_(params.gene_count()), floor_(protein_floor), basal_(params.basal)
{
    params.validate();
    promoter_.assign(params.promoter.begin(), params.promoter.end());
    translation_.assign(params.translation.begin(), params.translation.end());
    first_edge_.reserve(static_cast<std::size_t>(genes_) + 1);
    for (int i = 0; i < genes_; ++i) {
        first_edge_.push_back(edges_.size());
        for (int j = 0; j < genes_; ++j) {
            if (params.hill(j, i) != 0.0) {
                edges_.push_back({j, params.hill(j, i), params.binding(j, i)});
            }
        }
    }
    first_edge_.push_back(edges_.size());
}

void GrnSystem::rhs(std::span<const double> state, std::span<double> deriv) const
{
    const auto g = static_cast<std::size_t>(genes_);
    const double* m = state.data();
    const double* p = state.data() + g;
    for (std::size_t i = 0; i < g; ++i) {
        double denom = 1.0;
        for (std::size_t e = first_edge_[i]; e < first_edge_[i + 1]; ++e) {
            const auto& edge = edges_[e];
            const double pj = std::max(p[edge.source], floor_);
            denom += edge.binding * std::pow(pj, edge.hill);
        }
        deriv[i] = -m[i] + promoter_[i] / denom + basal_;
        deriv[g + i] = -translation_[i] * (p[i] - m[i]);
    }
}

void GrnSystem::jacobian(std::span<const double> state, std::span<double> jac) const
{
    const auto g = static_cast<std::size_t>(genes_);
    const std::size_t dim = 2 * g;
    const double* p = state.data() + g;
    std::fill(jac.begin(), jac.end(), 0.0);
    for (std::size_t i = 0; i < g; ++i) {
        double denom = 1.0;
        for (std::size_t e = first_edge_[i]; e < first_edge_[i + 1]; ++e) {
            const auto& edge = edges_[e];
            denom += edge.binding * std::pow(std::max(p[edge.source], floor_), edge.hill);
        }
        const double scale = -promoter_[i] / (denom * denom);
        for (std::size_t e = first_edge_[i]; e < first_edge_[i + 1]; ++e) {
            const auto& edge = edges_[e];
            const double pj = p[edge.source];
            if (pj <= floor_) {
                continue;  // clamped region: flat in p_j
            }
            const double term = edge.binding * edge.hill * std::pow(pj, edge.hill - 1.0);
            jac[i * dim + g + static_cast<std::size_t>(edge.source)] += scale * term;
        }
        jac[i * dim + i] = -1.0;
        jac[(g + i) * dim + (g + i)] = -translation_[i];
        jac[(g + i) * dim + i] = translation_[i];
    }
}

void rhs(const GrnParameters& params, std::span<const double> mrna, std::span<const double> protein,
         std::span<double> dmrna, std::span<double> dprotein, double protein_floor)
{
    const GrnSystem system(params, protein_floor);
    const auto g = static_cast<std::size_t>(system.gene_count());
    if (mrna.size() != g || protein.size() != g || dmrna.size() != g || dprotein.size() != g) {
        throw std::invalid_argument("state size does not match gene count");
    }
    std::vector<double> state(2 * g);
    std::vector<double> deriv(2 * g);
    std::copy(mrna.begin(), mrna.end(), state.begin());
    std::copy(protein.begin(), protein.end(), state.begin() + static_cast<std::ptrdiff_t>(g));
    system.rhs(state, deriv);
    std::copy(deriv.begin(), deriv.begin() + static_cast<std::ptrdiff_t>(g), dmrna.begin());
    std::copy(deriv.begin() + static_cast<std::ptrdiff_t>(g), deriv.end(), dprotein.begin());
}

namespace {

Eigen::VectorXd pack(const InitialState& init, int genes)
{
    if (init.mrna.size() != genes || init.protein.size() != genes) {
        throw std::invalid_argument("initial state has " + std::to_string(init.mrna.size()) + "/"
                                    + std::to_string(init.protein.size()) + " species, network has "
                                    + std::to_string(genes) + " genes");
    }
    Eigen::VectorXd x(2 * genes);
    x << init.mrna, init.protein;
    return x;
}

// L-stable 4th-order Rosenbrock method with embedded 3rd-order error estimate
// (Hairer & Wanner's RODAS coefficients, as also shipped by Boost.Odeint).
// The system is autonomous, so the time-derivative terms vanish.
struct RosenbrockTableau {
    static constexpr double gamma = 0.25;
    static constexpr double a21 = 0.1544000000000000e+01;
    static constexpr double a31 = 0.9466785280815826e+00;
    static constexpr double a32 = 0.2557011698983284e+00;
    static constexpr double a41 = 0.3314825187068521e+01;
    static constexpr double a42 = 0.2896124015972201e+01;
    static constexpr double a43 = 0.9986419139977817e+00;
    static constexpr double a51 = 0.1221224509226641e+01;
    static constexpr double a52 = 0.6019134481288629e+01;
    static constexpr double a53 = 0.1253708332932087e+02;
    static constexpr double a54 = -0.6878860361058950e+00;
    static constexpr double c21 = -0.5668800000000000e+01;
    static constexpr double c31 = -0.2430093356833875e+01;
    static constexpr double c32 = -0.2063599157091915e+00;
    static constexpr double c41 = -0.1073529058151375e+00;
    static constexpr double c42 = -0.9594562251023355e+01;
    static constexpr double c43 = -0.2047028614809616e+02;
    static constexpr double c51 = 0.7496443313967647e+01;
    static constexpr double c52 = -0.1024680431464352e+02;
    static constexpr double c53 = -0.3399990352819905e+02;
    static constexpr double c54 = 0.1170890893206160e+02;
    static constexpr double c61 = 0.8083246795921522e+01;
    static constexpr double c62 = -0.7981132988064893e+01;
    static constexpr double c63 = -0.3152159432874371e+02;
    static constexpr double c64 = 0.1631930543123136e+02;
    static constexpr double c65 = -0.6058818238834054e+01;
};

class Integrator {
public:
    Integrator(const GrnSystem& system, const IntegratorOptions& options)
        : system_(system), options_(options)
    {
        const auto n = static_cast<Eigen::Index>(system.dimension());
        jac_.resize(n, n);
        iteration_.resize(n, n);
        f_.resize(n);
        tmp_.resize(n);
        g1_.resize(n);
        g2_.resize(n);
        g3_.resize(n);
        g4_.resize(n);
        g5_.resize(n);
        err_.resize(n);
        xnew_.resize(n);
    }

    /// Advances x from t to exactly t_end.
    void advance(Eigen::VectorXd& x, double& t, double t_end)
    {
        int steps = 0;
        while (t < t_end) {
            if (++steps > options_.max_steps_per_sample) {
                throw IntegrationError("step budget exhausted near t=" + std::to_string(t));
            }
            const double remaining = t_end - t;
            const bool clipped = dt_ >= remaining;
            const double h = clipped ? remaining : dt_;
            const double err = step(x, h);
            double fac = std::max(1.0 / 6.0, std::min(5.0, std::pow(err, 0.25) / 0.9));
            if (err <= 1.0) {
                if (!first_step_) {
                    double pred = (dt_old_ / h) * std::pow(err * err / err_old_, 0.25) / 0.9;
                    pred = std::max(1.0 / 6.0, std::min(5.0, pred));
                    fac = std::max(fac, pred);
                }
                first_step_ = false;
                double next = h / fac;
                if (last_rejected_) {
                    next = std::min(next, h);
                }
                dt_old_ = h;
                err_old_ = std::max(0.01, err);
                last_rejected_ = false;
                x.swap(xnew_);
                t = clipped ? t_end : t + h;
                // A step shortened only to land on the sample time does not
                // shrink the running step size.
                dt_ = clipped ? std::max(next, dt_) : next;
            }
            else {
                // Also taken for NaN errors, since the comparison above fails.
                dt_ = h / (std::isfinite(err) ? fac : 5.0);
                last_rejected_ = true;
            }
            if (!(dt_ > 1e-13 * std::max(1.0, t))) {
                throw IntegrationError("step size underflow near t=" + std::to_string(t));
            }
        }
        if (!x.allFinite()) {
            throw IntegrationError("non-finite state near t=" + std::to_string(t));
        }
    }

private:
    using T = RosenbrockTableau;

    void eval(const Eigen::VectorXd& x, Eigen::VectorXd& out) const
    {
        system_.rhs({x.data(), static_cast<std::size_t>(x.size())},
                    {out.data(), static_cast<std::size_t>(out.size())});
    }

    // One trial step of size h from x into xnew_. Returns the scaled RMS error.
    double step(const Eigen::VectorXd& x, double h)
    {
        const auto n = x.size();
        system_.jacobian({x.data(), static_cast<std::size_t>(n)},
                         {jac_.data(), static_cast<std::size_t>(n * n)});
        iteration_ = -jac_;
        iteration_.diagonal().array() += 1.0 / (T::gamma * h);
        lu_.compute(iteration_);

        eval(x, f_);
        g1_ = lu_.solve(f_);

        tmp_ = x + T::a21 * g1_;
        eval(tmp_, f_);
        f_ += (T::c21 / h) * g1_;
        g2_ = lu_.solve(f_);

        tmp_ = x + T::a31 * g1_ + T::a32 * g2_;
        eval(tmp_, f_);
        f_ += (T::c31 * g1_ + T::c32 * g2_) / h;
        g3_ = lu_.solve(f_);

        tmp_ = x + T::a41 * g1_ + T::a42 * g2_ + T::a43 * g3_;
        eval(tmp_, f_);
        f_ += (T::c41 * g1_ + T::c42 * g2_ + T::c43 * g3_) / h;
        g4_ = lu_.solve(f_);

        tmp_ = x + T::a51 * g1_ + T::a52 * g2_ + T::a53 * g3_ + T::a54 * g4_;
        eval(tmp_, f_);
        f_ += (T::c51 * g1_ + T::c52 * g2_ + T::c53 * g3_ + T::c54 * g4_) / h;
        g5_ = lu_.solve(f_);

        tmp_ += g5_;
        eval(tmp_, f_);
        f_ += (T::c61 * g1_ + T::c62 * g2_ + T::c63 * g3_ + T::c64 * g4_ + T::c65 * g5_) / h;
        err_ = lu_.solve(f_);
        xnew_ = tmp_ + err_;

        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sk = options_.atol + options_.rtol * std::max(std::abs(x(i)), std::abs(xnew_(i)));
            const double e = err_(i) / sk;
            sum += e * e;
        }
        return std::sqrt(sum / static_cast<double>(n));
    }

    const GrnSystem& system_;
    IntegratorOptions options_;
    RowMatrix jac_;
    RowMatrix iteration_;
    Eigen::PartialPivLU<RowMatrix> lu_;
    Eigen::VectorXd f_, tmp_, g1_, g2_, g3_, g4_, g5_, err_, xnew_;
    double dt_ = 1e-3;
    double dt_old_ = 0.0;
    double err_old_ = 0.0;
    bool first_step_ = true;
    bool last_rejected_ = false;
};

} // namespace

SimulationTrace simulate(const GrnParameters& params, const InitialState& init, int duration,
                         const IntegratorOptions& options)
{
    if (duration < 0) {
        throw std::invalid_argument("duration must be nonnegative");
    }
    const GrnSystem system(params, options.protein_floor);
    const int g = system.gene_count();
    Eigen::VectorXd x = pack(init, g);

    SimulationTrace trace;
    const auto samples = static_cast<Eigen::Index>(duration) + 1;
    trace.times.resize(static_cast<std::size_t>(samples));
    trace.mrna.resize(samples, g);
    trace.protein.resize(samples, g);
    auto record = [&](Eigen::Index row) {
        trace.times[static_cast<std::size_t>(row)] = static_cast<double>(row);
        for (int i = 0; i < g; ++i) {
            trace.mrna(row, i) = std::max(x(i), 0.0);
            trace.protein(row, i) = std::max(x(g + i), 0.0);
        }
    };

    record(0);
    Integrator integrator(system, options);
    double t = 0.0;
    for (Eigen::Index k = 1; k < samples; ++k) {
        integrator.advance(x, t, static_cast<double>(k));
        record(k);
    }
    return trace;
}

InitialState advance(const GrnParameters& params, const InitialState& init, double duration,
                     const IntegratorOptions& options)
{
    const GrnSystem system(params, options.protein_floor);
    const int g = system.gene_count();
    Eigen::VectorXd x = pack(init, g);
    Integrator integrator(system, options);
    double t = 0.0;
    while (t < duration) {
        integrator.advance(x, t, std::min(duration, std::floor(t) + 1.0));
    }
    return InitialState{x.head(g), x.tail(g)};
}

InitialState steady_state(const GrnParameters& params, const InitialState& guess, double tolerance,
                          int max_iterations)
{
    const GrnSystem system(params);
    const int g = system.gene_count();
    const auto dim = static_cast<Eigen::Index>(2 * g);
    Eigen::VectorXd x = pack(guess, g);
    Eigen::VectorXd f(dim);
    RowMatrix jac(dim, dim);
    for (int it = 0; it < max_iterations; ++it) {
        system.rhs({x.data(), static_cast<std::size_t>(dim)}, {f.data(), static_cast<std::size_t>(dim)});
        if (f.lpNorm<Eigen::Infinity>() < tolerance) {
            InitialState out{x.head(g), x.tail(g)};
            return out;
        }
        system.jacobian({x.data(), static_cast<std::size_t>(dim)},
                        {jac.data(), static_cast<std::size_t>(dim * dim)});
        Eigen::VectorXd step = jac.partialPivLu().solve(-f);
        // Damped update keeps concentrations positive.
        double lambda = 1.0;
        while (lambda > 1e-8 && ((x + lambda * step).array() <= 0.0).any()) {
            lambda *= 0.5;
        }
        x += lambda * step;
        if (!x.allFinite()) {
            break;
        }
    }
    throw IntegrationError("steady-state iteration did not converge");
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace)
{
    const auto g = trace.mrna.cols();
    out << 't';
    for (Eigen::Index i = 1; i <= g; ++i) {
        out << ",m_" << i;
    }
    for (Eigen::Index i = 1; i <= g; ++i) {
        out << ",p_" << i;
    }
    out << '\n';
    for (std::size_t row = 0; row < trace.samples(); ++row) {
        const auto r = static_cast<Eigen::Index>(row);
        out << format_number(trace.times[row]);
        for (Eigen::Index i = 0; i < g; ++i) {
            out << ',' << format_number(trace.mrna(r, i));
        }
        for (Eigen::Index i = 0; i < g; ++i) {
            out << ',' << format_number(trace.protein(r, i));
        }
        out << '\n';
    }
}

} // namespace grnevo
