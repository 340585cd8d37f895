#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "arakelov/common.hpp"

namespace arakelov {

using IntegerMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// LLL reduction of the lattice spanned by the columns of `basis`.
/// Returns the unimodular U such that basis * U is reduced.
IntegerMatrix lll_reduce_basis(const Eigen::MatrixXd& basis, double delta = 0.99);

/// LLL reduction of the integer lattice Z^m under the positive definite form
/// `gram`. Returns unimodular U with U^T gram U reduced.
IntegerMatrix lll_reduce_gram(const Eigen::MatrixXd& gram, double delta = 0.99);

struct EnumerationStats {
    std::uint64_t nodes = 0;
    bool truncated = false;
    bool stopped = false;
};

/// Visitor for enumerated points: integer coordinates and the form value.
/// Returning false stops the enumeration.
using PointVisitor = std::function<bool(const std::vector<long long>&, double)>;

/// Fincke-Pohst enumeration of the nonzero points of Z^m inside the ellipsoid
/// x^T Q x <= bound. The form is LLL-reduced once at construction; points are
/// reported in the original coordinates.
class EllipsoidEnumerator {
public:
    explicit EllipsoidEnumerator(const Eigen::MatrixXd& form, bool reduce = true);

    int dimension() const { return static_cast<int>(form_.rows()); }
    const Eigen::MatrixXd& form() const { return form_; }

    EnumerationStats run(double bound, std::uint64_t node_cap, const PointVisitor& visit) const;

    /// Smallest nonzero value of the form, searched by enumeration.
    double minimum(std::uint64_t node_cap) const;

private:
    Eigen::MatrixXd form_;
    IntegerMatrix transform_;
    Eigen::MatrixXd reduced_;
    Eigen::MatrixXd cholesky_;  // upper triangular R with reduced_ = R^T R
};

double quadratic_value(const Eigen::MatrixXd& form, const std::vector<long long>& x);

}  // namespace arakelov
