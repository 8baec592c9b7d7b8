#include <doctest.h>

#include <sstream>

#include "grnevo/dynamics.hpp"
#include "grnevo/experiment.hpp"
#include "grnevo/fitness.hpp"
#include "grnevo/network_io.hpp"
#include "oracles.hpp"

using namespace grnevo;

namespace {

GrnParameters network(const char* name)
{
    return load_network(data_directory() / "networks" / (std::string(name) + ".json")).params;
}

double relative_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    double worst = 0.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            const double scale = std::max(std::abs(b(r, c)), 1e-3);
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)) / scale);
        }
    }
    return worst;
}

InitialState asymmetric_start()
{
    InitialState init = InitialState::uniform(3, 1.0);
    init.set(0, 5.0);
    return init;
}

} // namespace

TEST_CASE("unregulated gene from zero has the full production rate")
{
    auto p = GrnParameters::zeros(1);
    p.promoter << 100.0;
    p.translation << 1.0;
    std::vector<double> m{0.0}, q{0.0}, dm(1), dq(1);
    rhs(p, m, q, dm, dq);
    CHECK(dm[0] == doctest::Approx(100.2));
    CHECK(dq[0] == 0.0);
}

TEST_CASE("protein equal to mRNA has zero protein derivative")
{
    const auto p = network("repressilator");
    std::vector<double> m{1.0, 7.0, 3.0}, dm(3), dq(3);
    rhs(p, m, m, dm, dq);
    for (double v : dq) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("single repressor evaluated by hand")
{
    auto p = GrnParameters::zeros(2);
    p.hill(0, 1) = 2.0;
    p.binding(0, 1) = 2.0;
    p.promoter << 1.0, 100.0;
    p.translation << 1.0, 1.0;
    std::vector<double> m{0.0, 0.0}, q{1.0, 0.0}, dm(2), dq(2);
    rhs(p, m, q, dm, dq);
    CHECK(dm[1] == doctest::Approx(100.0 / 3.0 + 0.2));
}

TEST_CASE("unregulated gene relaxes monotonically to its steady state")
{
    auto p = GrnParameters::zeros(1);
    p.promoter << 100.0;
    p.translation << 1.0;
    const auto trace = simulate(p, InitialState::uniform(1, 0.0), 50);
    CHECK(trace.samples() == 51);
    for (std::size_t t = 1; t < trace.samples(); ++t) {
        CHECK(trace.mrna(static_cast<Eigen::Index>(t), 0) >= trace.mrna(static_cast<Eigen::Index>(t) - 1, 0));
        CHECK(trace.times[t] == static_cast<double>(t));
    }
    CHECK(std::abs(trace.mrna(50, 0) - 100.2) < 1e-3);
}

TEST_CASE("repressilator trace agrees with a fine fixed-step integrator and keeps oscillating")
{
    const auto p = network("repressilator");
    const auto init = asymmetric_start();
    const auto trace = simulate(p, init, 100);
    const auto reference = oracle::rk4_protein(p, init, 100);
    CHECK(relative_gap(trace.protein, reference) < 1e-4);

    const auto late = trace.protein.col(0).tail(30);
    CHECK(late.maxCoeff() - late.minCoeff() > 1.0);
}

TEST_CASE("toggle settles to two distinct levels from low and high target starts")
{
    const auto p = network("toggle");
    InitialState low = InitialState::uniform(2, 1.0);
    InitialState high = low;
    high.set(0, 100.0);
    const auto a = simulate(p, low, 50).protein.col(0).mean();
    const auto b = simulate(p, high, 50).protein.col(0).mean();
    CHECK(std::abs(a - b) >= 9.0);
    CHECK(relative_gap(simulate(p, high, 50).protein, oracle::rk4_protein(p, high, 50)) < 1e-4);
}

TEST_CASE("tighter tolerances barely move the reference traces")
{
    IntegratorOptions tight;
    tight.rtol = 0.5e-6;
    tight.atol = 0.5e-9;
    for (const char* name : {"repressilator", "toggle"}) {
        const auto p = network(name);
        InitialState init = InitialState::uniform(p.gene_count(), 1.0);
        init.set(0, 5.0);
        const auto a = simulate(p, init, 100);
        const auto b = simulate(p, init, 100, tight);
        CHECK(relative_gap(a.protein, b.protein) < 1e-3);
    }
}

TEST_CASE("samples are nonnegative")
{
    const auto p = network("repressilator");
    const auto trace = simulate(p, InitialState::uniform(3, 0.0), 100);
    CHECK(trace.protein.minCoeff() >= 0.0);
    CHECK(trace.mrna.minCoeff() >= 0.0);
}

TEST_CASE("a system started at its fixed point stays there")
{
    auto p = GrnParameters::zeros(2);
    p.promoter << 10.0, 20.0;
    p.translation << 1.0, 2.0;
    InitialState init;
    init.mrna = Eigen::Vector2d(10.2, 20.2);
    init.protein = init.mrna;
    const auto trace = simulate(p, init, 20);
    for (Eigen::Index t = 0; t <= 20; ++t) {
        CHECK(trace.protein(t, 0) == doctest::Approx(10.2).epsilon(1e-9));
        CHECK(trace.protein(t, 1) == doctest::Approx(20.2).epsilon(1e-9));
    }
}

TEST_CASE("zero duration returns the initial state")
{
    const auto p = network("repressilator");
    const auto init = asymmetric_start();
    const auto trace = simulate(p, init, 0);
    CHECK(trace.samples() == 1);
    CHECK(trace.protein.row(0).transpose() == init.protein);
}

TEST_CASE("steady state solver finds a fixed point")
{
    const auto p = network("repressilator");
    const auto ss = steady_state(p, InitialState::uniform(3, 5.0));
    std::vector<double> m(ss.mrna.data(), ss.mrna.data() + 3), q(ss.protein.data(), ss.protein.data() + 3);
    std::vector<double> dm(3), dq(3);
    rhs(p, m, q, dm, dq);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(dm[i]) < 1e-8);
        CHECK(std::abs(dq[i]) < 1e-8);
    }
}

TEST_CASE("trace CSV header and row count")
{
    const auto p = network("toggle");
    std::ostringstream out;
    write_trace_csv(out, simulate(p, InitialState::uniform(2, 1.0), 3));
    const auto text = out.str();
    CHECK(text.rfind("t,m_1,m_2,p_1,p_2\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("mismatched initial state is rejected")
{
    const auto p = network("toggle");
    CHECK_THROWS_AS((void)simulate(p, InitialState::uniform(3, 1.0), 10), std::invalid_argument);
}
