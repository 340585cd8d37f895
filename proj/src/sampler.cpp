#include "arakelov/sampler.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "arakelov/integers.hpp"
#include "arakelov/lattice.hpp"

namespace arakelov {

namespace {

using Int128 = __int128;

long long mod_pow(long long b, long long e, long long m) {
    Int128 result = 1;
    Int128 base = ((b % m) + m) % m;
    while (e > 0) {
        if (e & 1) result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<long long>(result);
}

long long mod_inverse(long long a, long long p) { return mod_pow(a, p - 2, p); }

void check_spec(const RandomLatticeSpec& spec) {
    if (spec.n < 2) throw InvalidArgument("random lattices need rank n >= 2");
    if (!is_prime(spec.p)) throw InvalidArgument("Hecke modulus " + std::to_string(spec.p) + " is not prime");
}

/// Integer basis (columns) of the congruence lattice of a mod p.
IntegerMatrix congruence_basis(int n, long long p, std::vector<long long> a) {
    for (auto& x : a) x = ((x % p) + p) % p;
    int k = -1;
    for (int i = 0; i < n; ++i)
        if (a[i] != 0) {
            k = i;
            break;
        }
    if (k < 0) throw InvalidArgument("congruence vector vanishes modulo p");
    const long long inv = mod_inverse(a[k], p);
    IntegerMatrix B = IntegerMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        if (j == k) {
            B(k, j) = p;
        } else {
            B(j, j) = 1;
            const long long c = static_cast<long long>(static_cast<Int128>(a[j]) * inv % p);
            B(k, j) = c == 0 ? 0 : p - c;
        }
    }
    return B;
}

Eigen::MatrixXd integer_gram(const IntegerMatrix& B) {
    const Eigen::Index n = B.cols();
    Eigen::MatrixXd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Int128 s = 0;
            for (Eigen::Index r = 0; r < B.rows(); ++r) s += static_cast<Int128>(B(r, i)) * B(r, j);
            G(i, j) = static_cast<double>(s);
        }
    return G;
}

std::vector<long long> draw_coset(int n, long long p, CounterRng& rng) {
    std::vector<long long> a(n);
    while (true) {
        bool zero = true;
        for (auto& x : a) {
            x = static_cast<long long>(rng.below(static_cast<std::uint64_t>(p)));
            if (x != 0) zero = false;
        }
        if (!zero) return a;
    }
}

ArakelovBundle rational_random_bundle(int n, double target_slope, long long p, CounterRng& rng) {
    const IntegerMatrix B = congruence_basis(n, p, draw_coset(n, p, rng));
    const IntegerMatrix U = lll_reduce_gram(integer_gram(B));
    const Eigen::MatrixXd G = integer_gram(B * U);
    // det G = p^2, so deg = -log p before scaling.
    const double log_c = -target_slope - std::log(static_cast<double>(p)) / n;
    return ArakelovBundle(NumberField::rational(), n, {G * std::exp(2.0 * log_c)}, {});
}

ArakelovBundle quadratic_random_bundle(const NumberField& K, int n, double target_slope, long long p_min,
                                       CounterRng& rng) {
    const auto [p, r] = split_prime_at_least(K, p_min);
    const IntegerRing ring(K);
    const std::vector<OkElement> prime_ideal = {OkElement{p, 0}, OkElement{-r, 1}};
    const OkElement pi = ring.ideal_generator(prime_ideal);

    const auto a = draw_coset(n, p, rng);
    int k = 0;
    while (a[k] == 0) ++k;
    const long long inv = mod_inverse(a[k], p);
    // Columns: pi e_k and e_j - c_j e_k with c_j = a_j / a_k mod the prime ideal.
    std::vector<std::vector<OkElement>> columns(n, std::vector<OkElement>(n));
    for (int j = 0; j < n; ++j) {
        if (j == k) {
            columns[j][k] = pi;
            continue;
        }
        const long long c = static_cast<long long>(static_cast<Int128>(a[j]) * inv % p);
        columns[j][j] = OkElement{1, 0};
        columns[j][k] = ring.neg(ring.reduce_modulo(OkElement{c, 0}, prime_ideal));
    }

    const double log_c = (-target_slope - std::log(static_cast<double>(p)) / n) / K.degree();
    const double factor = std::exp(2.0 * log_c);
    std::vector<Eigen::MatrixXd> re;
    std::vector<Eigen::MatrixXcd> cx;
    for (const Place& v : K.infinite_places()) {
        Eigen::MatrixXcd S(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) S(i, j) = ring.embed(columns[j][i], v);
        Eigen::MatrixXcd H = factor * (S.adjoint() * S);
        if (v.kind == PlaceKind::real) re.push_back(H.real());
        else cx.push_back(H);
    }
    return ArakelovBundle(K, n, std::move(re), std::move(cx));
}

}  // namespace

std::pair<long long, long long> split_prime_at_least(const NumberField& field, long long p) {
    if (field.is_rational()) throw InvalidArgument("split primes are defined for quadratic fields");
    static std::mutex mutex;
    static std::map<std::pair<long long, long long>, std::pair<long long, long long>> cache;
    const auto key = std::make_pair(field.radicand(), p);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const long long limit = 2 * std::max(p, 2LL) + 1000;
    for (long long q = std::max(p, 2LL); q <= limit; ++q) {
        if (!is_prime(q) || field.discriminant() % q == 0) continue;
        const auto places = places_above(field, q);
        if (places.size() != 2) continue;
        const auto found = std::make_pair(q, places[0].residue);
        std::lock_guard lock(mutex);
        cache[key] = found;
        return found;
    }
    throw Error("no split prime found in [" + std::to_string(p) + ", " + std::to_string(limit) + "]");
}

ArakelovBundle hecke_unimodular(const RandomLatticeSpec& spec, const std::vector<long long>& a) {
    check_spec(spec);
    if (static_cast<int>(a.size()) != spec.n) throw InvalidArgument("congruence vector has the wrong length");
    const IntegerMatrix B = congruence_basis(spec.n, spec.p, a);
    const double factor = std::pow(static_cast<double>(spec.p), -2.0 / spec.n);
    return ArakelovBundle(NumberField::rational(), spec.n, {integer_gram(B) * factor}, {});
}

ArakelovBundle random_bundle(const NumberField& field, int n, double target_slope, const RandomLatticeSpec& spec,
                             CounterRng& rng) {
    RandomLatticeSpec s = spec;
    s.n = n;
    check_spec(s);
    if (!std::isfinite(target_slope)) throw InvalidArgument("target slope must be finite");
    if (field.is_rational()) return rational_random_bundle(n, target_slope, spec.p, rng);
    return quadratic_random_bundle(field, n, target_slope, spec.p, rng);
}

ArakelovBundle random_bundle_for_trial(const RandomLatticeSpec& spec, double target_slope, std::uint64_t trial) {
    CounterRng rng(spec.seed, trial);
    return random_bundle(spec.field, spec.n, target_slope, spec, rng);
}

}  // namespace arakelov
