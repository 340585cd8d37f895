#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "arakelov/common.hpp"
#include "arakelov/numberfield.hpp"

namespace arakelov {

/// Square matrix of exact rationals, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    explicit RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, Rational(0)) {}

    static RationalMatrix identity(int n);

    int size() const { return n_; }
    Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

    Eigen::MatrixXd to_double() const;
    Rational determinant() const;
    RationalMatrix inverse() const;
    /// x^T M x for an integer vector.
    Rational evaluate(const std::vector<long long>& x) const;

    bool operator==(const RationalMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<Rational> data_;
};

/// The free module O_K^n with a positive definite metric at every infinite
/// place. Real places carry symmetric Grams, the complex place a hermitian
/// Gram with <x, y> = x^* G y. Immutable once constructed.
class ArakelovBundle {
public:
    ArakelovBundle(NumberField field, int rank, std::vector<Eigen::MatrixXd> real_grams,
                   std::vector<Eigen::MatrixXcd> complex_grams, std::optional<RationalMatrix> exact_gram = {});

    const NumberField& field() const { return field_; }
    int rank() const { return rank_; }
    const std::vector<Eigen::MatrixXd>& real_grams() const { return real_; }
    const std::vector<Eigen::MatrixXcd>& complex_grams() const { return complex_; }
    /// Exact Gram over Q when every input entry was rational.
    const std::optional<RationalMatrix>& exact_gram() const { return exact_; }

    /// Gram at the i-th infinite place (real places first), as complex matrix.
    Eigen::MatrixXcd gram_at(int place_index) const;

private:
    NumberField field_;
    int rank_;
    std::vector<Eigen::MatrixXd> real_;
    std::vector<Eigen::MatrixXcd> complex_;
    std::optional<RationalMatrix> exact_;
};

ArakelovBundle trivial_bundle(const NumberField& field, int n);

/// Validates one Gram per infinite place (real places first, then complex).
ArakelovBundle make_bundle(const NumberField& field, const std::vector<Eigen::MatrixXcd>& grams);
ArakelovBundle make_rational_bundle(const RationalMatrix& gram);
ArakelovBundle make_rational_bundle(const Eigen::MatrixXd& gram);

double degree(const ArakelovBundle& E);
double slope(const ArakelovBundle& E);

/// Per-place Kronecker product of the Grams; basis e_i (x) f_j at index i * rk(F) + j.
ArakelovBundle tensor(const ArakelovBundle& E, const ArakelovBundle& F);
ArakelovBundle determinant(const ArakelovBundle& E);
ArakelovBundle dual(const ArakelovBundle& E);
/// Multiplies real-place norms by t and complex-place (squared) norms by t^2.
ArakelovBundle scale(const ArakelovBundle& E, double t);
/// l-th exterior power; basis e_I for l-subsets I in lexicographic order.
ArakelovBundle exterior_power(const ArakelovBundle& E, int l);

/// Restriction of scalars: O_K^n as a Z-lattice of rank d * n inside the
/// product of the completions, with one form per infinite place.
struct ZLatticeView {
    NumberField field;
    int module_rank = 0;
    int dimension = 0;
    /// q(e) = sum_real ||e||_v^2 + 2 sum_complex ||e||_v.
    Eigen::MatrixXd trace_form;
    /// Real place: x^T F x = ||e||_v^2. Complex place: x^T F x = ||e||_v.
    std::vector<Eigen::MatrixXd> place_forms;
    std::vector<PlaceKind> place_kinds;
    std::optional<RationalMatrix> exact_form;

    /// Normalized norms ||e||_v at the infinite places.
    std::vector<double> norms(const ModuleVector& x) const;
    /// Lambda-covolume sqrt(det trace_form).
    double covolume() const;
};

ZLatticeView restrict_scalars(const ArakelovBundle& E);

/// The subbundle whose generic fibre is the K-span of the generators.
struct Subbundle {
    ArakelovBundle bundle;
    /// O_K-basis of the saturated module (rows are module vectors of E).
    std::vector<ModuleVector> basis;
    /// Z-basis in Hermite normal form of the saturated module.
    std::vector<ModuleVector> z_basis;
};

Subbundle saturate_subbundle(const ArakelovBundle& E, const std::vector<ModuleVector>& generators);

/// Degree of the saturated subbundle with the given Z-basis (d * l vectors),
/// via lambda-covolume: (l/2) log disc - (1/2) log det(Z^T q Z).
double subbundle_degree(const ZLatticeView& view, const std::vector<ModuleVector>& z_basis);

/// Per-place log determinant of a positive definite Gram, or InvalidMetric.
double log_det_positive(const Eigen::MatrixXcd& gram);

}  // namespace arakelov
