#include "arakelov/bundle.hpp"

#include <cmath>
#include <functional>

#include "arakelov/integers.hpp"
#include "arakelov/intlinalg.hpp"
#include "arakelov/lattice.hpp"

namespace arakelov {

namespace {

Rational rational_determinant(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

std::vector<std::vector<int>> subsets(int n, int l) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == l) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

void check_square(const Eigen::MatrixXcd& g, int rank) {
    if (g.rows() != rank || g.cols() != rank)
        throw InvalidMetric("Gram matrix has shape " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                            ", expected " + std::to_string(rank) + "x" + std::to_string(rank));
}

double symmetry_scale(const Eigen::MatrixXcd& g) { return std::max(1.0, g.cwiseAbs().maxCoeff()); }

Eigen::MatrixXcd embedding_matrix(const NumberField& K, int n, const Place& v) {
    const int d = K.degree();
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n * d);
    const auto basis = K.integral_basis();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) B(i, i * d + k) = K.embed(basis[k], v);
    return B;
}

std::complex<double> hermitian_pair(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    return x.dot(G * y);  // Eigen's dot conjugates the first argument
}

}  // namespace

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
    Eigen::MatrixXd out(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out(i, j) = arakelov::to_double((*this)(i, j));
    return out;
}

Rational RationalMatrix::determinant() const {
    std::vector<std::vector<Rational>> a(n_, std::vector<Rational>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) a[i][j] = (*this)(i, j);
    return rational_determinant(std::move(a));
}

RationalMatrix RationalMatrix::inverse() const {
    const int n = n_;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = (*this)(i, j);
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw InvalidMetric("singular rational matrix");
        std::swap(a[p], a[c]);
        const Rational pivot = a[c][c];
        for (auto& x : a[c]) x /= pivot;
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c];
            for (int k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    RationalMatrix inv(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = a[i][n + j];
    return inv;
}

Rational RationalMatrix::evaluate(const std::vector<long long>& x) const {
    Rational s = 0;
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        Rational row = 0;
        for (int j = 0; j < n_; ++j)
            if (x[j] != 0) row += (*this)(i, j) * x[j];
        s += row * x[i];
    }
    return s;
}

double log_det_positive(const Eigen::MatrixXcd& gram) {
    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success) throw InvalidMetric("Gram matrix is not positive definite");
    const Eigen::MatrixXcd L = llt.matrixL();
    double s = 0;
    for (Eigen::Index i = 0; i < L.rows(); ++i) {
        const double d = L(i, i).real();
        if (!(d > 0)) throw InvalidMetric("Gram matrix is not positive definite");
        s += 2.0 * std::log(d);
    }
    return s;
}

ArakelovBundle::ArakelovBundle(NumberField field, int rank, std::vector<Eigen::MatrixXd> real_grams,
                               std::vector<Eigen::MatrixXcd> complex_grams, std::optional<RationalMatrix> exact_gram)
    : field_(std::move(field)),
      rank_(rank),
      real_(std::move(real_grams)),
      complex_(std::move(complex_grams)),
      exact_(std::move(exact_gram)) {
    if (rank_ < 1) throw InvalidArgument("bundle rank must be at least 1");
    if (static_cast<int>(real_.size()) != field_.real_places() ||
        static_cast<int>(complex_.size()) != field_.complex_places())
        throw InvalidMetric("need one Gram per infinite place of " + field_.descriptor());
    for (auto& g : real_) {
        check_square(g.cast<std::complex<double>>(), rank_);
        if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * symmetry_scale(g.cast<std::complex<double>>()))
            throw InvalidMetric("real Gram matrix is not symmetric");
        g = 0.5 * (g + g.transpose());
        log_det_positive(g.cast<std::complex<double>>());
    }
    for (auto& g : complex_) {
        check_square(g, rank_);
        if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * symmetry_scale(g))
            throw InvalidMetric("complex Gram matrix is not hermitian");
        g = 0.5 * (g + g.adjoint());
        log_det_positive(g);
    }
    if (exact_) {
        if (!field_.is_rational()) exact_.reset();
        else if (exact_->size() != rank_) throw InvalidMetric("exact Gram has the wrong shape");
    }
}

Eigen::MatrixXcd ArakelovBundle::gram_at(int place_index) const {
    if (place_index < static_cast<int>(real_.size())) return real_[place_index].cast<std::complex<double>>();
    return complex_.at(place_index - real_.size());
}

ArakelovBundle trivial_bundle(const NumberField& field, int n) {
    if (n < 1) throw InvalidArgument("bundle rank must be at least 1");
    std::vector<Eigen::MatrixXd> re(field.real_places(), Eigen::MatrixXd::Identity(n, n));
    std::vector<Eigen::MatrixXcd> cx(field.complex_places(), Eigen::MatrixXcd::Identity(n, n));
    std::optional<RationalMatrix> exact;
    if (field.is_rational()) exact = RationalMatrix::identity(n);
    return ArakelovBundle(field, n, std::move(re), std::move(cx), std::move(exact));
}

ArakelovBundle make_bundle(const NumberField& field, const std::vector<Eigen::MatrixXcd>& grams) {
    if (static_cast<int>(grams.size()) != field.infinite_place_count())
        throw InvalidMetric("need " + std::to_string(field.infinite_place_count()) + " Gram matrices for " +
                            field.descriptor());
    if (grams.empty()) throw InvalidMetric("no Gram matrices given");
    const int n = static_cast<int>(grams[0].rows());
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (int i = 0; i < field.real_places(); ++i) {
        check_square(grams[i], n);
        if (grams[i].imag().cwiseAbs().maxCoeff() > 0) throw InvalidMetric("real place Gram has imaginary entries");
        re.push_back(grams[i].real());
    }
    for (int i = field.real_places(); i < field.infinite_place_count(); ++i) cx.push_back(grams[i]);
    return ArakelovBundle(field, n, std::move(re), std::move(cx));
}

ArakelovBundle make_rational_bundle(const RationalMatrix& gram) {
    return ArakelovBundle(NumberField::rational(), gram.size(), {gram.to_double()}, {}, gram);
}

ArakelovBundle make_rational_bundle(const Eigen::MatrixXd& gram) {
    return ArakelovBundle(NumberField::rational(), static_cast<int>(gram.rows()), {gram}, {});
}

double degree(const ArakelovBundle& E) {
    double deg = 0;
    for (const auto& g : E.real_grams()) deg -= 0.5 * log_det_positive(g.cast<std::complex<double>>());
    for (const auto& g : E.complex_grams()) deg -= log_det_positive(g);
    return deg;
}

double slope(const ArakelovBundle& E) { return degree(E) / E.rank(); }

ArakelovBundle tensor(const ArakelovBundle& E, const ArakelovBundle& F) {
    if (!(E.field() == F.field())) throw FieldMismatch();
    const int a = E.rank();
    const int b = F.rank();
    auto kron = [&](const auto& G, const auto& H) {
        using M = std::decay_t<decltype(G)>;
        M out(a * b, a * b);
        for (int i = 0; i < a; ++i)
            for (int k = 0; k < a; ++k) out.block(i * b, k * b, b, b) = G(i, k) * H;
        return out;
    };
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (std::size_t v = 0; v < E.real_grams().size(); ++v) re.push_back(kron(E.real_grams()[v], F.real_grams()[v]));
    for (std::size_t v = 0; v < E.complex_grams().size(); ++v)
        cx.push_back(kron(E.complex_grams()[v], F.complex_grams()[v]));
    std::optional<RationalMatrix> exact;
    if (E.exact_gram() && F.exact_gram()) {
        RationalMatrix m(a * b);
        for (int i = 0; i < a; ++i)
            for (int k = 0; k < a; ++k)
                for (int j = 0; j < b; ++j)
                    for (int l = 0; l < b; ++l) m(i * b + j, k * b + l) = (*E.exact_gram())(i, k) * (*F.exact_gram())(j, l);
        exact = std::move(m);
    }
    return ArakelovBundle(E.field(), a * b, std::move(re), std::move(cx), std::move(exact));
}

ArakelovBundle determinant(const ArakelovBundle& E) {
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (const auto& g : E.real_grams())
        re.push_back(Eigen::MatrixXd::Constant(1, 1, std::exp(log_det_positive(g.cast<std::complex<double>>()))));
    for (const auto& g : E.complex_grams())
        cx.push_back(Eigen::MatrixXcd::Constant(1, 1, std::exp(log_det_positive(g))));
    std::optional<RationalMatrix> exact;
    if (E.exact_gram()) {
        RationalMatrix m(1);
        m(0, 0) = E.exact_gram()->determinant();
        exact = std::move(m);
    }
    return ArakelovBundle(E.field(), 1, std::move(re), std::move(cx), std::move(exact));
}

ArakelovBundle dual(const ArakelovBundle& E) {
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (const auto& g : E.real_grams()) {
        Eigen::MatrixXd inv = g.llt().solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()));
        re.push_back(0.5 * (inv + inv.transpose()));
    }
    for (const auto& g : E.complex_grams()) {
        Eigen::MatrixXcd inv = g.llt().solve(Eigen::MatrixXcd::Identity(g.rows(), g.cols())).transpose();
        cx.push_back(0.5 * (inv + inv.adjoint()));
    }
    std::optional<RationalMatrix> exact;
    if (E.exact_gram()) exact = E.exact_gram()->inverse();
    return ArakelovBundle(E.field(), E.rank(), std::move(re), std::move(cx), std::move(exact));
}

ArakelovBundle scale(const ArakelovBundle& E, double t) {
    if (!(t > 0) || !std::isfinite(t)) throw InvalidArgument("scale factor must be positive");
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (const auto& g : E.real_grams()) re.push_back(g * (t * t));
    for (const auto& g : E.complex_grams()) cx.push_back(g * (t * t));
    std::optional<RationalMatrix> exact;
    if (t == 1.0) exact = E.exact_gram();
    return ArakelovBundle(E.field(), E.rank(), std::move(re), std::move(cx), std::move(exact));
}

ArakelovBundle exterior_power(const ArakelovBundle& E, int l) {
    const int n = E.rank();
    if (l < 1 || l > n) throw InvalidArgument("exterior power degree out of range");
    const auto sets = subsets(n, l);
    const int N = static_cast<int>(sets.size());
    auto compound = [&](const Eigen::MatrixXcd& G) {
        Eigen::MatrixXcd C(N, N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                Eigen::MatrixXcd sub(l, l);
                for (int i = 0; i < l; ++i)
                    for (int j = 0; j < l; ++j) sub(i, j) = G(sets[a][i], sets[b][j]);
                C(a, b) = sub.determinant();
            }
        return C;
    };
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (const auto& g : E.real_grams()) re.push_back(compound(g.cast<std::complex<double>>()).real());
    for (const auto& g : E.complex_grams()) cx.push_back(compound(g));
    std::optional<RationalMatrix> exact;
    if (E.exact_gram()) {
        RationalMatrix C(N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                std::vector<std::vector<Rational>> sub(l, std::vector<Rational>(l));
                for (int i = 0; i < l; ++i)
                    for (int j = 0; j < l; ++j) sub[i][j] = (*E.exact_gram())(sets[a][i], sets[b][j]);
                C(a, b) = rational_determinant(std::move(sub));
            }
        exact = std::move(C);
    }
    return ArakelovBundle(E.field(), N, std::move(re), std::move(cx), std::move(exact));
}

std::vector<double> ZLatticeView::norms(const ModuleVector& x) const {
    std::vector<double> out;
    out.reserve(place_forms.size());
    for (std::size_t v = 0; v < place_forms.size(); ++v) {
        const double q = std::max(0.0, quadratic_value(place_forms[v], x));
        out.push_back(place_kinds[v] == PlaceKind::real ? std::sqrt(q) : q);
    }
    return out;
}

double ZLatticeView::covolume() const {
    return std::exp(0.5 * log_det_positive(trace_form.cast<std::complex<double>>()));
}

ZLatticeView restrict_scalars(const ArakelovBundle& E) {
    const NumberField& K = E.field();
    ZLatticeView view{K, E.rank(), E.rank() * K.degree(), {}, {}, {}, {}};
    const int m = view.dimension;
    view.trace_form = Eigen::MatrixXd::Zero(m, m);
    const auto places = K.infinite_places();
    for (std::size_t v = 0; v < places.size(); ++v) {
        const Eigen::MatrixXcd B = embedding_matrix(K, E.rank(), places[v]);
        Eigen::MatrixXd F = (B.adjoint() * E.gram_at(static_cast<int>(v)) * B).real();
        F = 0.5 * (F + F.transpose());
        const double weight = places[v].kind == PlaceKind::complex ? 2.0 : 1.0;
        view.trace_form += weight * F;
        view.place_forms.push_back(std::move(F));
        view.place_kinds.push_back(places[v].kind);
    }
    if (K.is_rational()) view.exact_form = E.exact_gram();
    return view;
}

double subbundle_degree(const ZLatticeView& view, const std::vector<ModuleVector>& z_basis) {
    const int d = view.field.degree();
    const int k = static_cast<int>(z_basis.size());
    if (k == 0 || k % d != 0) throw InvalidArgument("Z-basis size must be a positive multiple of the degree");
    Eigen::MatrixXd Z(view.dimension, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < view.dimension; ++i) Z(i, j) = static_cast<double>(z_basis[j][i]);
    const Eigen::MatrixXd G = Z.transpose() * view.trace_form * Z;
    const int l = k / d;
    return 0.5 * l * std::log(static_cast<double>(view.field.discriminant())) -
           0.5 * log_det_positive(G.cast<std::complex<double>>());
}

Subbundle saturate_subbundle(const ArakelovBundle& E, const std::vector<ModuleVector>& generators) {
    const NumberField& K = E.field();
    const int d = K.degree();
    const int m = E.rank() * d;
    if (generators.empty()) throw InvalidArgument("saturation needs at least one generator");
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != m) throw InvalidArgument("generator has the wrong length");
    const int l = static_cast<int>(generators.size());

    IntegerRing ring(K);
    IntMatrix span = to_int_matrix(generators);
    if (d == 2) {
        const OkElement omega{0, 1};
        for (const auto& g : generators) {
            auto v = to_ok_vector(K, g);
            for (auto& e : v) e = ring.mul(e, omega);
            span.push_back(to_int_matrix({to_module_vector(K, v)})[0]);
        }
    }
    if (integer_rank(span) != d * l) throw DependentGenerators("generators are linearly dependent over K");
    const IntMatrix sat = saturate(span, m);
    std::vector<ModuleVector> z_basis = to_module_vectors(sat);

    std::vector<ModuleVector> basis;
    if (d == 1) {
        basis = z_basis;
    } else {
        std::vector<std::vector<OkElement>> rows;
        for (const auto& z : z_basis) rows.push_back(to_ok_vector(K, z));
        for (const auto& row : ok_echelon_basis(ring, rows)) basis.push_back(to_module_vector(K, row));
        if (static_cast<int>(basis.size()) != l) throw Error("O_K echelon form returned the wrong rank");
    }

    const auto places = K.infinite_places();
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (std::size_t v = 0; v < places.size(); ++v) {
        const Eigen::MatrixXcd B = embedding_matrix(K, E.rank(), places[v]);
        Eigen::MatrixXcd S(E.rank(), l);
        for (int j = 0; j < l; ++j) {
            Eigen::VectorXd coords(m);
            for (int i = 0; i < m; ++i) coords(i) = static_cast<double>(basis[j][i]);
            S.col(j) = B * coords.cast<std::complex<double>>();
        }
        const Eigen::MatrixXcd G = E.gram_at(static_cast<int>(v));
        Eigen::MatrixXcd H(l, l);
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b) H(a, b) = hermitian_pair(G, S.col(a), S.col(b));
        if (places[v].kind == PlaceKind::real) re.push_back(H.real());
        else cx.push_back(H);
    }
    std::optional<RationalMatrix> exact;
    if (E.exact_gram()) {
        RationalMatrix M(l);
        const RationalMatrix& G = *E.exact_gram();
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b) {
                Rational s = 0;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j)
                        if (basis[a][i] != 0 && basis[b][j] != 0) s += G(i, j) * basis[a][i] * basis[b][j];
                M(a, b) = s;
            }
        exact = std::move(M);
    }
    return {ArakelovBundle(K, l, std::move(re), std::move(cx), std::move(exact)), std::move(basis), std::move(z_basis)};
}

}  // namespace arakelov
