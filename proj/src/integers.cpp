#include "arakelov/integers.hpp"

#include <cmath>
#include <limits>

#include "arakelov/intlinalg.hpp"
#include "arakelov/lattice.hpp"

namespace arakelov {

namespace {

std::array<double, 2> real_coordinates(const IntegerRing& ring, const OkElement& a) {
    const NumberField& K = ring.field();
    const auto places = K.infinite_places();
    if (K.real_places() == 2) return {ring.embed(a, places[0]).real(), ring.embed(a, places[1]).real()};
    const std::complex<double> z = ring.embed(a, places[0]);
    return {z.real(), z.imag()};
}

BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

OkElement IntegerRing::mul(const OkElement& a, const OkElement& b) const {
    const BigInt t = field_.omega_trace();
    const BigInt n = field_.omega_norm();
    return {a.x * b.x - n * a.y * b.y, a.x * b.y + a.y * b.x + t * a.y * b.y};
}

OkElement IntegerRing::conj(const OkElement& a) const {
    if (field_.is_rational()) return a;
    return {a.x + field_.omega_trace() * a.y, -a.y};
}

BigInt IntegerRing::norm(const OkElement& a) const {
    if (field_.is_rational()) return a.x;
    return a.x * a.x + field_.omega_trace() * a.x * a.y + field_.omega_norm() * a.y * a.y;
}

std::optional<OkElement> IntegerRing::divide(const OkElement& a, const OkElement& b) const {
    if (b.is_zero()) throw ZeroElement();
    if (field_.is_rational()) {
        if (a.x % b.x != 0) return std::nullopt;
        return OkElement{a.x / b.x, 0};
    }
    const BigInt n = norm(b);
    const OkElement num = mul(a, conj(b));
    if (num.x % n != 0 || num.y % n != 0) return std::nullopt;
    return OkElement{num.x / n, num.y / n};
}

std::complex<double> IntegerRing::embed(const OkElement& a, const Place& place) const {
    const std::complex<double> w = field_.embed_omega(place);
    return a.x.convert_to<double>() + a.y.convert_to<double>() * w;
}

FieldElement IntegerRing::to_field(const OkElement& a) const {
    if (field_.is_rational() || field_.omega_trace() == 0) return FieldElement(Rational(a.x), Rational(a.y));
    return FieldElement(Rational(a.x) + Rational(a.y, 2), Rational(a.y, 2));
}

IntegerRing::Bezout IntegerRing::bezout(const OkElement& a, const OkElement& b) const {
    const OkElement one{1, 0};
    const OkElement zero{0, 0};
    if (a.is_zero()) return {b, zero, one};
    if (b.is_zero()) return {a, one, zero};
    if (divide(b, a)) return {a, one, zero};
    if (divide(a, b)) return {b, zero, one};
    if (field_.is_rational()) {
        BigInt r0 = a.x, r1 = b.x, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            BigInt q = r0 / r1, tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
            tmp = s0 - q * s1;
            s0 = s1;
            s1 = tmp;
            tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
        }
        return {OkElement{r0, 0}, OkElement{s0, 0}, OkElement{t0, 0}};
    }
    const OkElement omega{0, 1};
    const std::array<OkElement, 4> gens = {a, mul(a, omega), b, mul(b, omega)};
    IntMatrix M;
    for (const auto& g : gens) M.push_back({g.x, g.y});
    HermiteResult h = hermite_normal_form(M, true);
    const OkElement z0{h.form[0][0], h.form[0][1]};
    const OkElement z1{h.form[1][0], h.form[1][1]};
    const OkElement g = ideal_generator({z0, z1});
    // g = c0 z0 + c1 z1 with z0 = (h00, h01), z1 = (0, h11).
    const BigInt c0 = g.x / h.form[0][0];
    const BigInt c1 = (g.y - c0 * h.form[0][1]) / h.form[1][1];
    std::array<BigInt, 4> coeff;
    for (int k = 0; k < 4; ++k) coeff[k] = c0 * h.transform[0][k] + c1 * h.transform[1][k];
    const OkElement u{coeff[0], coeff[1]};
    const OkElement v{coeff[2], coeff[3]};
    return {g, u, v};
}

OkElement IntegerRing::ideal_generator(const std::vector<OkElement>& z_basis) const {
    if (field_.is_rational()) {
        BigInt g = 0;
        for (const auto& z : z_basis) g = boost::multiprecision::gcd(g, z.x);
        return {g, 0};
    }
    if (z_basis.size() != 2) throw InvalidArgument("ideal Z-basis must have two elements");
    const BigInt index = big_abs(z_basis[0].x * z_basis[1].y - z_basis[0].y * z_basis[1].x);
    if (index == 0) throw InvalidArgument("degenerate ideal basis");
    const auto places = field_.infinite_places();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(2, 2);
    for (const Place& v : places) {
        const std::complex<double> s0 = embed(z_basis[0], v);
        const std::complex<double> s1 = embed(z_basis[1], v);
        gram(0, 0) += std::norm(s0);
        gram(1, 1) += std::norm(s1);
        gram(0, 1) += (s0 * std::conj(s1)).real();
    }
    gram(1, 0) = gram(0, 1);
    EllipsoidEnumerator enumerator(gram);
    double bound = gram.diagonal().minCoeff();
    for (int round = 0; round < 200; ++round, bound *= 2) {
        std::optional<OkElement> found;
        double best = std::numeric_limits<double>::infinity();
        enumerator.run(bound, std::numeric_limits<std::uint64_t>::max(), [&](const std::vector<long long>& c, double q) {
            OkElement e{c[0] * z_basis[0].x + c[1] * z_basis[1].x, c[0] * z_basis[0].y + c[1] * z_basis[1].y};
            if (big_abs(norm(e)) == index && q < best) {
                best = q;
                found = e;
            }
            return true;
        });
        if (found) return *found;
    }
    throw Error("no principal generator found; field is not a PID?");
}

OkElement IntegerRing::reduce_modulo(const OkElement& r, const std::vector<OkElement>& ideal_z_basis) const {
    if (field_.is_rational()) {
        const BigInt m = big_abs(ideal_generator(ideal_z_basis).x);
        BigInt x = r.x % m;
        if (x < 0) x += m;
        if (2 * x > m) x -= m;
        return {x, 0};
    }
    Eigen::MatrixXd basis(2, 2);
    for (int j = 0; j < 2; ++j) {
        const auto c = real_coordinates(*this, ideal_z_basis[j]);
        basis(0, j) = c[0];
        basis(1, j) = c[1];
    }
    const IntegerMatrix U = lll_reduce_basis(basis);
    std::vector<OkElement> reduced(2);
    Eigen::MatrixXd rb(2, 2);
    for (int j = 0; j < 2; ++j) {
        reduced[j] = OkElement{U(0, j) * ideal_z_basis[0].x + U(1, j) * ideal_z_basis[1].x,
                               U(0, j) * ideal_z_basis[0].y + U(1, j) * ideal_z_basis[1].y};
        const auto c = real_coordinates(*this, reduced[j]);
        rb(0, j) = c[0];
        rb(1, j) = c[1];
    }
    const auto rc = real_coordinates(*this, r);
    Eigen::Vector2d t = rb.fullPivLu().solve(Eigen::Vector2d(rc[0], rc[1]));
    const long long k0 = std::llround(t(0));
    const long long k1 = std::llround(t(1));
    return {r.x - k0 * reduced[0].x - k1 * reduced[1].x, r.y - k0 * reduced[0].y - k1 * reduced[1].y};
}

std::vector<OkElement> to_ok_vector(const NumberField& field, const ModuleVector& v) {
    const int d = field.degree();
    if (v.size() % d != 0) throw InvalidArgument("module vector length is not a multiple of the degree");
    std::vector<OkElement> out(v.size() / d);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].x = v[i * d];
        if (d == 2) out[i].y = v[i * d + 1];
    }
    return out;
}

ModuleVector to_module_vector(const NumberField& field, const std::vector<OkElement>& v) {
    const int d = field.degree();
    ModuleVector out(v.size() * d);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i * d] = v[i].x.convert_to<long long>();
        if (d == 2) out[i * d + 1] = v[i].y.convert_to<long long>();
    }
    return out;
}

std::vector<std::vector<OkElement>> ok_echelon_basis(const IntegerRing& ring,
                                                     std::vector<std::vector<OkElement>> rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][col].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][col].is_zero()) continue;
            const OkElement a = rows[r][col];
            const OkElement b = rows[i][col];
            const auto bz = ring.bezout(a, b);
            const OkElement a_g = *ring.divide(a, bz.g);
            const OkElement b_g = *ring.divide(b, bz.g);
            for (std::size_t k = 0; k < n; ++k) {
                const OkElement x = rows[r][k];
                const OkElement y = rows[i][k];
                rows[r][k] = ring.add(ring.mul(bz.u, x), ring.mul(bz.v, y));
                rows[i][k] = ring.sub(ring.mul(b_g, x), ring.mul(a_g, y));
            }
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace arakelov
