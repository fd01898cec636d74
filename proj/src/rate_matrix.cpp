#include "qar/rate_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qar/errors.hpp"

namespace qar {

RateMatrix::RateMatrix(std::size_t n) : w_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)))
{
    if (n == 0) throw std::invalid_argument("RateMatrix: empty state space");
}

void RateMatrix::add_transition(std::size_t from, std::size_t to, double rate)
{
    if (from >= size() || to >= size()) throw std::out_of_range("RateMatrix: state index");
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("RateMatrix: rate must be finite and >= 0");
    if (from == to || rate == 0.0) return;
    const auto i = static_cast<Eigen::Index>(from);
    const auto j = static_cast<Eigen::Index>(to);
    w_(j, i) += rate;
    w_(i, i) -= rate;
}

void RateMatrix::add_pair(std::size_t a, std::size_t b, double rate_ab, double rate_ba)
{
    add_transition(a, b, rate_ab);
    add_transition(b, a, rate_ba);
}

double RateMatrix::max_column_sum() const
{
    return w_.colwise().sum().cwiseAbs().maxCoeff();
}

double RateMatrix::scale() const
{
    return w_.diagonal().cwiseAbs().maxCoeff();
}

namespace {

// reach[i][j]: j reachable from i through positive rates
std::vector<std::vector<char>> reachability(const Eigen::MatrixXd& w)
{
    const auto n = static_cast<std::size_t>(w.rows());
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        reach[s][s] = 1;
        while (!stack.empty()) {
            const auto i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && !reach[s][j] && w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) > 0.0) {
                    reach[s][j] = 1;
                    stack.push_back(j);
                }
            }
        }
    }
    return reach;
}

} // namespace

Eigen::VectorXd steady_state(const RateMatrix& rm, double clamp)
{
    const Eigen::MatrixXd& w = rm.generator();
    const auto n = rm.size();

    // A state is recurrent iff everything it reaches can reach it back.
    const auto reach = reachability(w);
    std::vector<std::size_t> closed;
    std::size_t n_classes = 0;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bool recurrent = true;
        for (std::size_t j = 0; j < n && recurrent; ++j)
            if (reach[i][j] && !reach[j][i]) recurrent = false;
        if (!recurrent || seen[i]) continue;
        ++n_classes;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j]) {
                seen[j] = 1;
                if (n_classes == 1) closed.push_back(j);
            }
    }
    if (n_classes != 1)
        throw DegenerateGeneratorError("steady_state: generator has " + std::to_string(n_classes) + " closed classes");

    // GTH state reduction on the closed class. Works with off-diagonal rates
    // only, so no cancellation and every population stays non-negative.
    const std::size_t m = closed.size();
    Eigen::MatrixXd q(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                a == b ? 0.0 : w(static_cast<Eigen::Index>(closed[b]), static_cast<Eigen::Index>(closed[a]));
    // q(a, b): rate a -> b

    std::vector<double> pivot(m, 0.0);
    for (Eigen::Index k = static_cast<Eigen::Index>(m) - 1; k > 0; --k) {
        const double s = q.row(k).head(k).sum();
        if (!(s > 0.0)) throw DegenerateGeneratorError("steady_state: GTH pivot vanished");
        pivot[static_cast<std::size_t>(k)] = s;
        for (Eigen::Index i = 0; i < k; ++i) {
            const double f = q(i, k) / s;
            if (f == 0.0) continue;
            for (Eigen::Index j = 0; j < k; ++j)
                if (j != i) q(i, j) += f * q(k, j);
        }
    }
    std::vector<double> pi(m, 0.0);
    pi[0] = 1.0;
    for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(m); ++k) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) acc += pi[static_cast<std::size_t>(i)] * q(i, k);
        pi[static_cast<std::size_t>(k)] = acc / pivot[static_cast<std::size_t>(k)];
    }
    double total = 0.0;
    for (double v : pi) total += v;

    Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < m; ++a) {
        double v = pi[a] / total;
        if (std::abs(v) < clamp) v = std::max(v, 0.0);
        p(static_cast<Eigen::Index>(closed[a])) = v;
    }
    return p;
}

} // namespace qar
