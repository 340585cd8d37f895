#include "arakelov/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <cmath>
#include <numbers>

namespace arakelov {

namespace {

long long mod_floor(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

bool squarefree(long long n) {
    n = n < 0 ? -n : n;
    for (long long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

BigInt big_mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

BigInt inverse_mod(BigInt a, const BigInt& m) {
    BigInt r0 = m, r1 = big_mod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw Error("element is not invertible modulo " + m.str());
    return big_mod(s0, m);
}

long long p_adic_order(BigInt n, long long p) {
    if (n == 0) throw Error("p-adic order of zero");
    if (n < 0) n = -n;
    long long k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// x = (X + Y omega) / m with integers and m > 0.
struct IntegralForm {
    BigInt X, Y, m;
};

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

IntegralForm integral_form(const NumberField& field, const FieldElement& x) {
    Rational c0 = x.a;
    Rational c1 = x.b;
    if (!field.is_rational() && field.omega_trace() == 1) {
        // a + b sqrt(D) = (a - b) + 2b omega
        c0 = x.a - x.b;
        c1 = 2 * x.b;
    }
    BigInt m = lcm_big(denominator(c0), denominator(c1));
    return {numerator(c0) * (m / denominator(c0)), numerator(c1) * (m / denominator(c1)), m};
}

BigInt norm_of(const NumberField& field, const BigInt& X, const BigInt& Y) {
    return X * X + field.omega_trace() * X * Y + field.omega_norm() * Y * Y;
}

}  // namespace

Place Place::finite(long long p, long long residue, int residue_degree) {
    Place v;
    v.kind = PlaceKind::finite;
    v.prime = p;
    v.residue = residue;
    v.residue_degree = residue_degree;
    return v;
}

Place Place::real(int index) {
    Place v;
    v.kind = PlaceKind::real;
    v.index = index;
    return v;
}

Place Place::complex(int index) {
    Place v;
    v.kind = PlaceKind::complex;
    v.index = index;
    return v;
}

std::string Place::label() const {
    switch (kind) {
        case PlaceKind::real:
            return "real" + std::to_string(index);
        case PlaceKind::complex:
            return "complex" + std::to_string(index);
        case PlaceKind::finite:
            break;
    }
    std::string s = "p" + std::to_string(prime);
    if (residue >= 0) s += "r" + std::to_string(residue);
    if (residue_degree == 2) s += "f2";
    return s;
}

const std::vector<long long>& supported_radicands() {
    // Class number one: all nine imaginary fields, real fields with D < 100.
    static const std::vector<long long> list = {
        -163, -67, -43, -19, -11, -7, -3, -2, -1, 2,  3,  5,  6,  7,  11, 13, 14, 17, 19, 21, 22, 23,
        29,   31,  33,  37,  38,  41, 43, 46, 47, 53, 57, 59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97};
    return list;
}

NumberField NumberField::rational() { return NumberField{}; }

NumberField NumberField::quadratic(long long D) {
    if (D == 0 || D == 1 || !squarefree(D))
        throw InvalidDescriptor("Q(sqrt{" + std::to_string(D) + "}) needs squarefree D other than 0 and 1");
    const auto& ok = supported_radicands();
    if (std::find(ok.begin(), ok.end(), D) == ok.end())
        throw InvalidDescriptor("Q(sqrt{" + std::to_string(D) +
                                "}) is not in the supported class-number-one list");
    NumberField K;
    K.radicand_ = D;
    const long long absD = D < 0 ? -D : D;
    if (mod_floor(D, 4) == 1) {
        K.disc_ = absD;
        K.omega_trace_ = 1;
        K.omega_norm_ = (1 - D) / 4;
    } else {
        K.disc_ = 4 * absD;
        K.omega_trace_ = 0;
        K.omega_norm_ = -D;
    }
    K.r1_ = D > 0 ? 2 : 0;
    K.r2_ = D > 0 ? 0 : 1;
    K.w_ = D == -1 ? 4 : (D == -3 ? 6 : 2);
    return K;
}

NumberField NumberField::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "Q") return rational();
    if (s == "Q(i)") return quadratic(-1);
    const std::string head = "Q(sqrt";
    if (s.size() > head.size() + 3 && s.compare(0, head.size(), head) == 0 && s.back() == ')') {
        char open = s[head.size()];
        char close = s[s.size() - 2];
        if ((open == '{' && close == '}') || (open == '(' && close == ')')) {
            std::string inner = s.substr(head.size() + 1, s.size() - head.size() - 3);
            std::size_t used = 0;
            long long D = 0;
            try {
                D = std::stoll(inner, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == inner.size() && !inner.empty()) return quadratic(D);
        }
    }
    throw InvalidDescriptor("unrecognized field descriptor '" + std::string(text) +
                            "' (expected Q or Q(sqrt{D}))");
}

std::string NumberField::descriptor() const {
    if (is_rational()) return "Q";
    return "Q(sqrt{" + std::to_string(radicand_) + "})";
}

std::vector<FieldElement> NumberField::integral_basis() const {
    if (is_rational()) return {FieldElement(1)};
    if (omega_trace_ == 1) return {FieldElement(1), FieldElement(Rational(1, 2), Rational(1, 2))};
    return {FieldElement(1), FieldElement(0, 1)};
}

std::vector<Place> NumberField::infinite_places() const {
    std::vector<Place> out;
    for (int i = 0; i < r1_; ++i) out.push_back(Place::real(i));
    for (int i = 0; i < r2_; ++i) out.push_back(Place::complex(i));
    return out;
}

std::complex<double> NumberField::embed(const FieldElement& x, const Place& place) const {
    if (!place.is_infinite()) throw InvalidArgument("embedding requires an infinite place");
    const double a = to_double(x.a);
    const double b = to_double(x.b);
    if (is_rational()) return {a, 0.0};
    if (place.kind == PlaceKind::real) {
        const double root = std::sqrt(static_cast<double>(radicand_)) * (place.index == 0 ? 1.0 : -1.0);
        return {a + b * root, 0.0};
    }
    return {a, b * std::sqrt(static_cast<double>(-radicand_))};
}

std::complex<double> NumberField::embed_omega(const Place& place) const {
    if (is_rational()) return {0.0, 0.0};
    return embed(integral_basis()[1], place);
}

double NumberField::fundamental_unit() const {
    if (is_rational() || radicand_ < 0) throw InvalidArgument("fundamental unit needs a real quadratic field");
    using i128 = __int128;
    const i128 D = radicand_;
    const bool half = omega_trace_ == 1;
    for (long long y = 1; y < 100'000'000; ++y) {
        for (int target : {-1, 1}) {
            const i128 t = half ? 4 * target : target;
            const i128 x2 = D * y * y + t;
            if (x2 <= 0) continue;
            i128 x = static_cast<i128>(std::llround(std::sqrt(static_cast<long double>(x2))));
            while (x * x > x2) --x;
            while ((x + 1) * (x + 1) <= x2) ++x;
            if (x * x == x2) {
                const long double eps = (static_cast<long double>(x) +
                                         static_cast<long double>(y) * std::sqrt(static_cast<long double>(D))) /
                                        (half ? 2.0L : 1.0L);
                return static_cast<double>(eps);
            }
        }
    }
    throw Error("fundamental unit search exhausted");
}

double AdelicDivisor::at(const Place& v) const {
    auto it = entries.find(v);
    return it == entries.end() ? 1.0 : it->second;
}

double AdelicDivisor::product() const {
    Rational finite = 1;
    for (const auto& [v, q] : exact) finite *= q;
    double value = to_double(finite);
    for (const auto& [v, x] : entries)
        if (v.is_infinite()) value *= x;
    return value;
}

std::vector<Place> places_above(const NumberField& field, long long p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (field.is_rational()) return {Place::finite(p)};
    if (p > 100'000'000) throw Unsupported("prime splitting is only computed for p < 1e8");
    const long long t = mod_floor(field.omega_trace(), p);
    const long long n = mod_floor(field.omega_norm(), p);
    std::vector<long long> roots;
    for (long long z = 0; z < p; ++z) {
        const __int128 f = static_cast<__int128>(z) * z - static_cast<__int128>(t) * z + n;
        if (f % p == 0) roots.push_back(z);
    }
    if (roots.size() == 2) return {Place::finite(p, roots[0]), Place::finite(p, roots[1])};
    if (roots.size() == 1) return {Place::finite(p)};
    return {Place::finite(p, -1, 2)};
}

long long valuation(const NumberField& field, const Place& place, const FieldElement& x) {
    if (place.is_infinite()) throw InvalidArgument("valuation needs a finite place");
    if (x.is_zero()) throw ZeroElement();
    const long long p = place.prime;
    if (field.is_rational()) return p_adic_order(numerator(x.a), p) - p_adic_order(denominator(x.a), p);

    const IntegralForm f = integral_form(field, x);
    const BigInt N = norm_of(field, f.X, f.Y);
    const long long vN = p_adic_order(N, p);
    const long long vm = p_adic_order(f.m, p);
    if (place.residue_degree == 2) return vN / 2 - vm;
    if (place.residue < 0) return vN - 2 * vm;

    // Split prime: reduce X + Y omega through the p-adic root of the minimal
    // polynomial of omega lifted past the largest possible valuation.
    const long long k = vN + 1;
    BigInt modulus = 1;
    for (long long i = 0; i < k; ++i) modulus *= p;
    const BigInt t = field.omega_trace();
    const BigInt nn = field.omega_norm();
    BigInt z = place.residue;
    for (long long iter = 0; iter < k + 2; ++iter) {
        BigInt fz = big_mod(z * z - t * z + nn, modulus);
        if (fz == 0) break;
        BigInt dz = big_mod(2 * z - t, modulus);
        z = big_mod(z - fz * inverse_mod(dz, modulus), modulus);
    }
    BigInt image = big_mod(f.X + f.Y * z, modulus);
    long long v = 0;
    if (image == 0) {
        v = k;
    } else {
        while (image % p == 0) {
            image /= p;
            ++v;
        }
    }
    return v - vm;
}

Rational absolute_value_exact(const NumberField& field, const Place& place, const FieldElement& x) {
    const long long v = valuation(field, place, x);
    BigInt q = 1;
    const long long e = (v < 0 ? -v : v) * place.residue_degree;
    for (long long i = 0; i < e; ++i) q *= place.prime;
    return v >= 0 ? Rational(BigInt(1), q) : Rational(q);
}

double absolute_value(const NumberField& field, const Place& place, const FieldElement& x) {
    if (x.is_zero()) throw ZeroElement();
    if (!place.is_infinite()) return to_double(absolute_value_exact(field, place, x));
    if (place.kind == PlaceKind::real && !field.is_rational() && field.radicand() < 0)
        throw InvalidArgument("imaginary quadratic fields have no real place");
    const std::complex<double> z = field.embed(x, place);
    if (place.kind == PlaceKind::real) return std::abs(z.real());
    if (field.is_rational() || field.radicand() > 0)
        throw InvalidArgument("field has no complex place");
    // Exact squared modulus a^2 - D b^2, rounded once.
    return to_double(x.a * x.a - Rational(field.radicand()) * x.b * x.b);
}

AdelicDivisor divisor(const NumberField& field, const FieldElement& x) {
    if (x.is_zero()) throw ZeroElement();
    AdelicDivisor div;
    std::vector<long long> primes;
    auto collect = [&](const BigInt& n) {
        for (const auto& [p, e] : factor(n)) primes.push_back(p);
    };
    if (field.is_rational()) {
        collect(numerator(x.a));
        collect(denominator(x.a));
    } else {
        const IntegralForm f = integral_form(field, x);
        collect(norm_of(field, f.X, f.Y));
        collect(f.m);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (long long p : primes) {
        for (const Place& v : places_above(field, p)) {
            if (valuation(field, v, x) == 0) continue;
            Rational q = absolute_value_exact(field, v, x);
            div.entries[v] = to_double(q);
            div.exact[v] = q;
        }
    }
    for (const Place& v : field.infinite_places()) {
        const double a = absolute_value(field, v, x);
        if (a != 1.0) div.entries[v] = a;
    }
    return div;
}

double ball_volume(int n) {
    if (n <= 0) throw InvalidArgument("ball_volume needs n >= 1");
    double v = (n % 2 == 0) ? 1.0 : 2.0;
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) v *= 2.0 * std::numbers::pi / k;
    return v;
}

double log_ball_volume(int n) {
    if (n <= 0) throw InvalidArgument("ball_volume needs n >= 1");
    double v = (n % 2 == 0) ? 0.0 : std::log(2.0);
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) v += std::log(2.0 * std::numbers::pi / k);
    return v;
}

double adelic_ball_volume(const NumberField& field, int n) {
    return std::exp(log_adelic_ball_volume(field, n));
}

double log_adelic_ball_volume(const NumberField& field, int n) {
    if (n <= 0) throw InvalidArgument("adelic_ball_volume needs n >= 1");
    return field.real_places() * log_ball_volume(n) +
           field.complex_places() * (n * std::log(2.0) + log_ball_volume(2 * n));
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    using u128 = unsigned __int128;
    const unsigned long long m = static_cast<unsigned long long>(n);
    auto mulmod = [m](unsigned long long a, unsigned long long b) {
        return static_cast<unsigned long long>(static_cast<u128>(a) * b % m);
    };
    auto powmod = [&](unsigned long long a, unsigned long long e) {
        unsigned long long r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    unsigned long long d = m - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (unsigned long long a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        unsigned long long x = powmod(a, d);
        if (x == 1 || x == m - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<long long, int>> factor(BigInt n) {
    if (n < 0) n = -n;
    std::vector<std::pair<long long, int>> out;
    if (n <= 1) return out;
    auto strip = [&](long long p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (long long p = 3; n > 1; p += 2) {
        if (BigInt(p) * p > n) break;
        if (p > 10'000'000) {
            if (n <= std::numeric_limits<long long>::max() && is_prime(n.convert_to<long long>())) break;
            throw Unsupported("integer too large to factor by trial division: " + n.str());
        }
        strip(p);
    }
    if (n > 1) {
        if (n > std::numeric_limits<long long>::max()) throw Unsupported("prime factor exceeds 64 bits");
        out.emplace_back(n.convert_to<long long>(), 1);
    }
    return out;
}

}  // namespace arakelov
