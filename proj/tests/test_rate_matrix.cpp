#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "qar/errors.hpp"
#include "qar/rate_matrix.hpp"

using namespace qar;

namespace {

RateMatrix random_generator(std::mt19937& rng, std::size_t n, double density)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RateMatrix w(n);
    // ring keeps it irreducible
    for (std::size_t i = 0; i < n; ++i) w.add_pair(i, (i + 1) % n, 0.1 + u(rng), 0.1 + u(rng));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && u(rng) < density) w.add_transition(i, j, std::pow(10.0, -6.0 * u(rng)));
    return w;
}

// Oracle: propagate dp/dt = W p for a long time.
Eigen::VectorXd long_time(const RateMatrix& w, double t)
{
    const Eigen::MatrixXd prop = (w.generator() * t).exp();
    Eigen::VectorXd p0 = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(w.size()), 1.0 / static_cast<double>(w.size()));
    return prop * p0;
}

} // namespace

TEST_CASE("columns sum to zero by construction")
{
    std::mt19937 rng(1);
    for (int k = 0; k < 20; ++k) CHECK(random_generator(rng, 6, 0.4).max_column_sum() < 1e-14);
}

TEST_CASE("invalid rates rejected")
{
    RateMatrix w(3);
    CHECK_THROWS(w.add_transition(0, 1, -1.0));
    CHECK_THROWS(w.add_transition(0, 3, 1.0));
    CHECK_THROWS(w.add_transition(0, 1, std::nan("")));
}

TEST_CASE("two-state detailed balance")
{
    RateMatrix w(2);
    w.add_pair(0, 1, 0.3, 0.9);
    const Eigen::VectorXd p = steady_state(w);
    CHECK(p(0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p(1) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("steady state matches long-time propagation")
{
    std::mt19937 rng(2);
    for (int k = 0; k < 10; ++k) {
        const RateMatrix w = random_generator(rng, 5, 0.5);
        const Eigen::VectorXd p = steady_state(w);
        const Eigen::VectorXd q = long_time(w, 400.0);
        CHECK((p - q).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(p.sum() - 1.0) < 1e-14);
        CHECK(p.minCoeff() >= 0.0);
        CHECK((w.generator() * p).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("Gibbs state with tiny weights keeps relative accuracy")
{
    // Kolmogorov-consistent rates over energies spanning 60 k_B T.
    const double e[4] = {0.0, 15.0, 30.0, 60.0};
    RateMatrix w(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) w.add_pair(i, j, 0.3 * std::exp(-(e[j] - e[i])), 0.3);
    const Eigen::VectorXd p = steady_state(w);
    double z = 0.0;
    for (double x : e) z += std::exp(-x);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(p(i) / (std::exp(-e[i]) / z) - 1.0) < 1e-12);
}

TEST_CASE("transient states get zero weight")
{
    RateMatrix w(3);
    w.add_transition(0, 1, 1.0); // 0 leaks into the closed pair {1, 2}
    w.add_pair(1, 2, 2.0, 1.0);
    const Eigen::VectorXd p = steady_state(w);
    CHECK(p(0) == 0.0);
    CHECK(p(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("disconnected generator is degenerate")
{
    RateMatrix w(3);
    w.add_pair(0, 1, 1.0, 1.0); // state 2 unreachable and unleavable
    CHECK_THROWS_AS(steady_state(w), DegenerateGeneratorError);
    RateMatrix z(2);
    CHECK_THROWS_AS(steady_state(z), DegenerateGeneratorError);
}
