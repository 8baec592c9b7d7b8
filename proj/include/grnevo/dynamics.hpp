#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "grnevo/model.hpp"

namespace grnevo {

/// Raised when the integrator cannot advance (step underflow, step budget
/// exhausted, or a non-finite state).
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InitialState {
    Eigen::VectorXd mrna;
    Eigen::VectorXd protein;

    [[nodiscard]] static InitialState uniform(int genes, double level);
    [[nodiscard]] int gene_count() const noexcept { return static_cast<int>(mrna.size()); }
    /// Sets both mRNA and protein of one gene.
    void set(int gene, double level);
};

/// Unit-spaced samples t = 0, 1, ..., T. Rows are samples, columns genes.
/// Sampled values are floored at zero.
struct SimulationTrace {
    std::vector<double> times;
    Eigen::MatrixXd mrna;
    Eigen::MatrixXd protein;

    [[nodiscard]] std::size_t samples() const noexcept { return times.size(); }
    [[nodiscard]] std::vector<double> protein_series(int gene) const;
    [[nodiscard]] std::vector<double> mrna_series(int gene) const;
};

struct IntegratorOptions {
    double rtol = 1e-6;
    double atol = 1e-9;
    /// Proteins are clamped to at least this value inside Hill terms, since
    /// activating (negative) exponents diverge at zero.
    double protein_floor = 1e-9;
    /// Accepted+rejected step budget per unit sampling interval.
    int max_steps_per_sample = 20000;
};

/// Compiled form of a parameter set: nonzero interactions grouped by target.
/// State vectors are laid out as [m_0..m_{G-1}, p_0..p_{G-1}].
class GrnSystem {
public:
    explicit GrnSystem(const GrnParameters& params, double protein_floor = 1e-9);

    [[nodiscard]] int gene_count() const noexcept { return genes_; }
    [[nodiscard]] int dimension() const noexcept { return 2 * genes_; }

    void rhs(std::span<const double> state, std::span<double> deriv) const;
    /// Dense row-major Jacobian, dimension() x dimension().
    void jacobian(std::span<const double> state, std::span<double> jac) const;

private:
    struct Edge {
        int source;
        double hill;
        double binding;
    };

    int genes_ = 0;
    double floor_ = 1e-9;
    double basal_ = 0.0;
    std::vector<double> promoter_;
    std::vector<double> translation_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> first_edge_;  // size genes_+1, edges for target i are [first_edge_[i], first_edge_[i+1])
};

/// Derivatives of both species for the given state.
void rhs(const GrnParameters& params, std::span<const double> mrna, std::span<const double> protein,
         std::span<double> dmrna, std::span<double> dprotein, double protein_floor = 1e-9);

/// Integrates from t = 0 to t = duration, sampling at every integer time.
/// Throws IntegrationError on failure.
[[nodiscard]] SimulationTrace simulate(const GrnParameters& params, const InitialState& init, int duration,
                                       const IntegratorOptions& options = {});

/// Integrates to `duration` and returns only the final state.
[[nodiscard]] InitialState advance(const GrnParameters& params, const InitialState& init, double duration,
                                   const IntegratorOptions& options = {});

/// Newton iteration for a steady state, started from `guess`.
/// Throws IntegrationError if it does not converge.
[[nodiscard]] InitialState steady_state(const GrnParameters& params, const InitialState& guess,
                                        double tolerance = 1e-12, int max_iterations = 100);

/// CSV with header `t,m_1..m_G,p_1..p_G`.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

} // namespace grnevo
