#include "arakelov/lattice.hpp"

#include <cmath>
#include <limits>

namespace arakelov {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

struct GramSchmidt {
    LMatrix mu;
    LVector norms;  // squared lengths of the orthogonalized vectors
};

GramSchmidt gram_schmidt(const LMatrix& B) {
    const Eigen::Index k = B.cols();
    GramSchmidt gs{LMatrix::Zero(k, k), LVector::Zero(k)};
    LMatrix star = B;
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            gs.mu(i, j) = B.col(i).dot(star.col(j)) / gs.norms(j);
            star.col(i) -= gs.mu(i, j) * star.col(j);
        }
        gs.mu(i, i) = 1;
        gs.norms(i) = star.col(i).squaredNorm();
    }
    return gs;
}

IntegerMatrix lll_core(LMatrix B, double delta) {
    const Eigen::Index k = B.cols();
    IntegerMatrix U = IntegerMatrix::Identity(k, k);
    if (k <= 1) return U;
    GramSchmidt gs = gram_schmidt(B);
    Eigen::Index i = 1;
    std::size_t iterations = 0;
    const std::size_t max_iterations = 1'000'000;
    while (i < k) {
        if (++iterations > max_iterations) throw Error("LLL reduction did not converge");
        for (Eigen::Index j = i - 1; j >= 0; --j) {
            const long double q = std::round(gs.mu(i, j));
            if (q == 0) continue;
            B.col(i) -= q * B.col(j);
            U.col(i) -= static_cast<long long>(q) * U.col(j);
            for (Eigen::Index t = 0; t <= j; ++t) gs.mu(i, t) -= q * gs.mu(j, t);
        }
        const long double m = gs.mu(i, i - 1);
        if (gs.norms(i) >= (delta - m * m) * gs.norms(i - 1)) {
            ++i;
        } else {
            B.col(i).swap(B.col(i - 1));
            U.col(i).swap(U.col(i - 1));
            gs = gram_schmidt(B);
            i = std::max<Eigen::Index>(i - 1, 1);
        }
    }
    return U;
}

}  // namespace

IntegerMatrix lll_reduce_basis(const Eigen::MatrixXd& basis, double delta) {
    return lll_core(basis.cast<long double>(), delta);
}

IntegerMatrix lll_reduce_gram(const Eigen::MatrixXd& gram, double delta) {
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw InvalidMetric("quadratic form is not positive definite");
    Eigen::MatrixXd L = llt.matrixL();
    return lll_core(L.transpose().cast<long double>(), delta);
}

double quadratic_value(const Eigen::MatrixXd& form, const std::vector<long long>& x) {
    long double s = 0;
    const auto m = static_cast<Eigen::Index>(x.size());
    for (Eigen::Index i = 0; i < m; ++i) {
        if (x[i] == 0) continue;
        long double row = 0;
        for (Eigen::Index j = 0; j < m; ++j) row += static_cast<long double>(form(i, j)) * x[j];
        s += row * x[i];
    }
    return static_cast<double>(s);
}

EllipsoidEnumerator::EllipsoidEnumerator(const Eigen::MatrixXd& form, bool reduce) : form_(form) {
    const Eigen::Index m = form.rows();
    transform_ = reduce ? lll_reduce_gram(form) : IntegerMatrix::Identity(m, m);
    const LMatrix T = transform_.cast<long double>();
    reduced_ = (T.transpose() * form.cast<long double>() * T).cast<double>();
    reduced_ = 0.5 * (reduced_ + reduced_.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(reduced_);
    if (llt.info() != Eigen::Success) throw InvalidMetric("quadratic form is not positive definite");
    cholesky_ = llt.matrixU();
}

EnumerationStats EllipsoidEnumerator::run(double bound, std::uint64_t node_cap, const PointVisitor& visit) const {
    EnumerationStats stats;
    const int m = dimension();
    if (m == 0 || bound < 0) return stats;
    const double inflated = bound * (1.0 + 1e-9) + 1e-12;

    std::vector<double> qd(m);
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const double r = cholesky_(i, i);
        qd[i] = r * r;
        for (int j = i + 1; j < m; ++j) mu(i, j) = cholesky_(i, j) / r;
    }

    std::vector<long long> y(m, 0), x(m, 0);
    auto emit = [&]() -> bool {
        bool zero = true;
        for (int i = 0; i < m; ++i) {
            long long s = 0;
            for (int j = 0; j < m; ++j) s += transform_(i, j) * y[j];
            x[i] = s;
            if (s != 0) zero = false;
        }
        if (zero) return true;
        return visit(x, quadratic_value(form_, x));
    };

    // Depth-first over levels m-1 .. 0.
    std::function<bool(int, double)> descend = [&](int level, double remaining) -> bool {
        double center = 0;
        for (int j = level + 1; j < m; ++j) center -= mu(level, j) * static_cast<double>(y[j]);
        const double half = std::sqrt(std::max(0.0, remaining) / qd[level]);
        const long long lo = static_cast<long long>(std::ceil(center - half - 1e-12));
        const long long hi = static_cast<long long>(std::floor(center + half + 1e-12));
        for (long long v = lo; v <= hi; ++v) {
            if (++stats.nodes > node_cap) {
                stats.truncated = true;
                return false;
            }
            const double diff = static_cast<double>(v) - center;
            const double rest = remaining - qd[level] * diff * diff;
            if (rest < -1e-12 * (1.0 + inflated)) continue;
            y[level] = v;
            if (level == 0) {
                if (!emit()) {
                    stats.stopped = true;
                    y[level] = 0;
                    return false;
                }
            } else if (!descend(level - 1, rest)) {
                y[level] = 0;
                return false;
            }
        }
        y[level] = 0;
        return true;
    };
    descend(m - 1, inflated);
    return stats;
}

double EllipsoidEnumerator::minimum(std::uint64_t node_cap) const {
    double best = reduced_.diagonal().minCoeff();
    EnumerationStats stats = run(best, node_cap, [&](const std::vector<long long>&, double value) {
        if (value < best) best = value;
        return true;
    });
    if (stats.truncated) throw Indeterminate(stats.nodes);
    return best;
}

}  // namespace arakelov
