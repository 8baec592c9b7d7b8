#pragma once

// Independent reference implementations used to check the library.

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "grnevo/dynamics.hpp"
#include "grnevo/model.hpp"

namespace oracle {

inline std::vector<double> autocorrelation(const std::vector<double>& x, int max_lag)
{
    const int n = static_cast<int>(x.size());
    double mean = 0.0;
    for (double v : x) {
        mean += v;
    }
    mean /= n;
    std::vector<double> c(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int lag = 0; lag <= max_lag; ++lag) {
        double s = 0.0;
        for (int t = 0; t + lag < n; ++t) {
            s += (x[t] - mean) * (x[t + lag] - mean);
        }
        c[lag] = s / (n - lag);
    }
    if (c[0] == 0.0) {
        return std::vector<double>(c.size(), 0.0);
    }
    const double c0 = c[0];
    for (double& v : c) {
        v /= c0;
    }
    return c;
}

inline double metric(const std::vector<double>& x, int max_lag = 50)
{
    const auto c = autocorrelation(x, max_lag);
    std::vector<double> minima;
    for (int lag = 1; lag < max_lag; ++lag) {
        if (c[lag] < c[lag - 1] && c[lag] < c[lag + 1]) {
            minima.push_back(c[lag]);
        }
    }
    double score = 0.0;
    for (std::size_t k = 0; k < minima.size() && k < 5; ++k) {
        score += (k == 0 ? 1.0 : 2.0) * minima[k];
    }
    return score;
}

/// Direct evaluation of the expression model for one state.
inline void derivatives(const grnevo::GrnParameters& p, const Eigen::VectorXd& m, const Eigen::VectorXd& q,
                        Eigen::VectorXd& dm, Eigen::VectorXd& dq)
{
    const int g = p.gene_count();
    dm.resize(g);
    dq.resize(g);
    for (int i = 0; i < g; ++i) {
        double denom = 1.0;
        for (int j = 0; j < g; ++j) {
            if (p.hill(j, i) != 0.0) {
                denom += p.binding(j, i) * std::pow(std::max(q[j], 1e-9), p.hill(j, i));
            }
        }
        dm[i] = -m[i] + p.promoter[i] / denom + p.basal;
        dq[i] = -p.translation[i] * (q[i] - m[i]);
    }
}

/// Fixed-step classical Runge-Kutta, sampled at integer times.
inline Eigen::MatrixXd rk4_protein(const grnevo::GrnParameters& p, const grnevo::InitialState& init, int duration,
                                   double dt = 1e-4)
{
    const int g = p.gene_count();
    Eigen::VectorXd m = init.mrna;
    Eigen::VectorXd q = init.protein;
    Eigen::MatrixXd out(duration + 1, g);
    out.row(0) = q.transpose();
    const int per_unit = static_cast<int>(std::lround(1.0 / dt));
    Eigen::VectorXd k1m, k1q, k2m, k2q, k3m, k3q, k4m, k4q;
    for (int t = 1; t <= duration; ++t) {
        for (int s = 0; s < per_unit; ++s) {
            derivatives(p, m, q, k1m, k1q);
            derivatives(p, m + 0.5 * dt * k1m, q + 0.5 * dt * k1q, k2m, k2q);
            derivatives(p, m + 0.5 * dt * k2m, q + 0.5 * dt * k2q, k3m, k3q);
            derivatives(p, m + dt * k3m, q + dt * k3q, k4m, k4q);
            m += dt / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
            q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        }
        out.row(t) = q.transpose();
    }
    return out;
}

/// Places a small network on the first genes of a larger, otherwise
/// unconnected one.
inline grnevo::GrnParameters embed(const grnevo::GrnParameters& small, int genes)
{
    auto p = grnevo::GrnParameters::zeros(genes);
    p.basal = small.basal;
    p.binding.setOnes();
    p.promoter.setConstant(50.0);
    p.translation.setOnes();
    const int k = small.gene_count();
    p.hill.topLeftCorner(k, k) = small.hill;
    p.binding.topLeftCorner(k, k) = small.binding;
    p.promoter.head(k) = small.promoter;
    p.translation.head(k) = small.translation;
    return p;
}

} // namespace oracle
