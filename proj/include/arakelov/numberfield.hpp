#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arakelov/common.hpp"

namespace arakelov {

enum class PlaceKind { finite, real, complex };

/// A place of K. Finite places are prime ideals over `prime`; for split primes
/// `residue` is the root of the minimal polynomial of omega modulo `prime`
/// that the ideal reduces omega to, and -1 otherwise.
struct Place {
    PlaceKind kind = PlaceKind::real;
    long long prime = 0;
    long long residue = -1;
    int residue_degree = 1;
    int index = 0;

    static Place finite(long long p, long long residue = -1, int residue_degree = 1);
    static Place real(int index);
    static Place complex(int index);

    bool is_infinite() const { return kind != PlaceKind::finite; }
    std::string label() const;

    auto operator<=>(const Place&) const = default;
};

/// An element a + b*sqrt(D) of K with rational coordinates (b = 0 over Q).
struct FieldElement {
    Rational a;
    Rational b;

    FieldElement() = default;
    FieldElement(Rational a_, Rational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const FieldElement&) const = default;
};

/// Q or a quadratic field Q(sqrt D) of class number one.
///
/// The integral basis is {1, omega} with omega = sqrt(D) for D = 2, 3 mod 4
/// and omega = (1 + sqrt(D)) / 2 for D = 1 mod 4. omega satisfies
/// omega^2 = trace * omega - norm.
class NumberField {
public:
    static NumberField rational();
    static NumberField quadratic(long long D);
    /// Accepts "Q" and "Q(sqrt{D})" (also "Q(sqrt(D))").
    static NumberField parse(std::string_view descriptor);

    bool is_rational() const { return radicand_ == 1; }
    long long radicand() const { return radicand_; }
    int degree() const { return is_rational() ? 1 : 2; }
    int real_places() const { return r1_; }
    int complex_places() const { return r2_; }
    int infinite_place_count() const { return r1_ + r2_; }
    long long discriminant() const { return disc_; }
    int roots_of_unity() const { return w_; }

    long long omega_trace() const { return omega_trace_; }
    long long omega_norm() const { return omega_norm_; }
    /// Integral basis as field elements: {1} over Q, {1, omega} otherwise.
    std::vector<FieldElement> integral_basis() const;

    /// Real places first (index 0 sends sqrt D to +sqrt D), then the complex place.
    std::vector<Place> infinite_places() const;
    /// Image of omega under the embedding belonging to an infinite place.
    std::complex<double> embed_omega(const Place& place) const;
    std::complex<double> embed(const FieldElement& x, const Place& place) const;

    /// Fundamental unit eps > 1 of a real quadratic field, as a real number.
    double fundamental_unit() const;

    std::string descriptor() const;

    bool operator==(const NumberField& other) const { return radicand_ == other.radicand_; }

private:
    long long radicand_ = 1;
    int r1_ = 1;
    int r2_ = 0;
    long long disc_ = 1;
    int w_ = 2;
    long long omega_trace_ = 0;
    long long omega_norm_ = 0;
};

/// Squarefree D != 0, 1 for which Q(sqrt D) has class number one and is
/// accepted by NumberField::quadratic.
const std::vector<long long>& supported_radicands();

/// Finitely supported map place -> |x|_v; absent places carry the value 1.
struct AdelicDivisor {
    std::map<Place, double> entries;
    /// Exact values at the finite places of the support.
    std::map<Place, Rational> exact;

    double at(const Place& v) const;
    /// Product of all entries: exact over the finite places, floating point
    /// over the infinite ones.
    double product() const;
};

/// Normalized absolute value |x|_v: p^(-f ord) at finite places, |x| at real
/// places and the squared modulus at complex places.
double absolute_value(const NumberField& field, const Place& place, const FieldElement& x);
/// Exact value at a finite place.
Rational absolute_value_exact(const NumberField& field, const Place& place, const FieldElement& x);
/// ord_v(x) for a finite place (valuation of the prime ideal, not of p).
long long valuation(const NumberField& field, const Place& place, const FieldElement& x);

/// Finite places above p.
std::vector<Place> places_above(const NumberField& field, long long p);

AdelicDivisor divisor(const NumberField& field, const FieldElement& x);

/// Volume of the euclidean unit ball in R^n.
double ball_volume(int n);
/// lambda^n of the adelic unit ball: V_n^r1 * (2^n V_2n)^r2.
double adelic_ball_volume(const NumberField& field, int n);
double log_ball_volume(int n);
double log_adelic_ball_volume(const NumberField& field, int n);

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<long long, int>> factor(BigInt n);
bool is_prime(long long n);

}  // namespace arakelov
