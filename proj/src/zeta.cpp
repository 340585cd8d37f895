#include "arakelov/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "arakelov/integers.hpp"
#include "arakelov/intlinalg.hpp"
#include "arakelov/lattice.hpp"

namespace arakelov {

namespace {

constexpr double kDegreeTolerance = 1e-9;

std::vector<std::vector<int>> lex_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    if (k > n) return out;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Bound on the trace form of a primitive Pluecker vector (up to units) whose
/// line has degree >= min_degree.
double pluecker_radius(const NumberField& K, double min_degree) {
    if (K.is_rational()) return std::exp(-2.0 * min_degree);
    if (K.complex_places() == 1) return 2.0 * std::exp(-min_degree);
    const double eps = K.fundamental_unit();
    return std::exp(-min_degree) * (eps + 1.0 / eps);
}

/// Matrix of the Z-linear map x -> x ^ w from O_K^n to wedge^(l+1) O_K^n.
IntMatrix wedge_map(const IntegerRing& ring, int n, int l, const ModuleVector& w) {
    const NumberField& K = ring.field();
    const int d = K.degree();
    const auto small = lex_subsets(n, l);
    const auto big = lex_subsets(n, l + 1);
    std::map<std::vector<int>, int> small_index;
    for (std::size_t i = 0; i < small.size(); ++i) small_index[small[i]] = static_cast<int>(i);
    const auto w_ok = to_ok_vector(K, w);
    const auto basis_elems = [&](int k) { return k == 0 ? OkElement{1, 0} : OkElement{0, 1}; };

    IntMatrix A(big.size() * d, std::vector<BigInt>(n * d, BigInt(0)));
    for (std::size_t J = 0; J < big.size(); ++J) {
        for (int p = 0; p < l + 1; ++p) {
            const int j = big[J][p];
            std::vector<int> rest;
            for (int q = 0; q < l + 1; ++q)
                if (q != p) rest.push_back(big[J][q]);
            const OkElement& wI = w_ok[small_index.at(rest)];
            if (wI.is_zero()) continue;
            for (int k = 0; k < d; ++k) {
                OkElement term = ring.mul(basis_elems(k), wI);
                if (p % 2 == 1) term = ring.neg(term);
                A[J * d][j * d + k] += term.x;
                if (d == 2) A[J * d + 1][j * d + k] += term.y;
            }
        }
    }
    return A;
}

long long coordinate_gcd(const ModuleVector& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

bool sign_normalized(const ModuleVector& v) {
    for (long long x : v)
        if (x != 0) return x > 0;
    return false;
}

std::vector<ModuleVector> coordinate_z_basis(int n, int d, int l) {
    std::vector<ModuleVector> z;
    for (int i = 0; i < l * d; ++i) {
        ModuleVector e(n * d, 0);
        e[i] = 1;
        z.push_back(std::move(e));
    }
    return z;
}

std::vector<ModuleVector> ok_basis(const NumberField& K, const std::vector<ModuleVector>& z_basis) {
    if (K.is_rational()) return z_basis;
    IntegerRing ring(K);
    std::vector<std::vector<OkElement>> rows;
    for (const auto& z : z_basis) rows.push_back(to_ok_vector(K, z));
    std::vector<ModuleVector> out;
    for (const auto& row : ok_echelon_basis(ring, rows)) out.push_back(to_module_vector(K, row));
    return out;
}

}  // namespace

std::vector<SubbundleRecord> enumerate_subbundles(const ArakelovBundle& E, int l, double min_degree,
                                                  std::uint64_t node_cap) {
    const NumberField& K = E.field();
    const int n = E.rank();
    const int d = K.degree();
    if (l < 1 || l > n) throw InvalidArgument("subbundle rank must satisfy 1 <= l <= rk(E)");
    if (!std::isfinite(min_degree)) throw InvalidArgument("minimum degree must be finite");
    if (l >= 2 && l < n && n > 4) throw Unsupported("subbundles of rank >= 2 are enumerated only for rk(E) <= 4");

    const ZLatticeView view = restrict_scalars(E);
    std::vector<SubbundleRecord> records;
    if (l == n) {
        const double deg = degree(E);
        if (deg >= min_degree - kDegreeTolerance) {
            auto z = coordinate_z_basis(n, d, n);
            records.push_back({n, deg, ok_basis(K, z), z});
        }
        return records;
    }

    const ZLatticeView pluecker = restrict_scalars(exterior_power(E, l));
    const EllipsoidEnumerator enumerator(pluecker.trace_form);
    const double radius = pluecker_radius(K, min_degree) * (1.0 + kDegreeTolerance);
    const bool rational_lines = K.is_rational() && l == 1;
    const IntegerRing ring(K);
    std::set<std::vector<long long>> seen;

    const EnumerationStats stats = enumerator.run(radius, node_cap, [&](const std::vector<long long>& w, double q) {
        if (coordinate_gcd(w) != 1) return true;
        if (rational_lines) {
            if (!sign_normalized(w)) return true;
            const double deg = -0.5 * std::log(q);
            if (deg >= min_degree - kDegreeTolerance) records.push_back({1, deg, {w}, {w}});
            return true;
        }
        const IntMatrix kernel = integer_kernel(wedge_map(ring, n, l, w), n * d);
        if (static_cast<int>(kernel.size()) != d * l) return true;
        auto key = lattice_key(kernel);
        if (!seen.insert(key).second) return true;
        auto z_basis = to_module_vectors(kernel);
        const double deg = subbundle_degree(view, z_basis);
        if (deg < min_degree - kDegreeTolerance) return true;
        records.push_back({l, deg, ok_basis(K, z_basis), std::move(z_basis)});
        return true;
    });
    if (stats.truncated) throw Indeterminate(stats.nodes);

    std::sort(records.begin(), records.end(), [](const SubbundleRecord& a, const SubbundleRecord& b) {
        if (a.degree != b.degree) return a.degree > b.degree;
        return a.z_basis < b.z_basis;
    });
    return records;
}

MuMax mu_max(const ArakelovBundle& E, int l, std::optional<double> min_degree_floor, std::uint64_t node_cap) {
    const int d = E.field().degree();
    if (l < 1 || l > E.rank()) throw InvalidArgument("subbundle rank must satisfy 1 <= l <= rk(E)");
    const bool defaulted = !min_degree_floor.has_value();
    const double floor = defaulted ? subbundle_degree(restrict_scalars(E), coordinate_z_basis(E.rank(), d, l))
                                   : *min_degree_floor;
    const auto records = enumerate_subbundles(E, l, floor - kDegreeTolerance, node_cap);
    MuMax result;
    if (records.empty()) {
        result.value = floor / l;
        result.exact = false;
        return result;
    }
    result.value = records.front().degree / l;
    result.exact = true;
    result.maximizer = records.front();
    return result;
}

ZetaPartial zeta_partial(const ArakelovBundle& E, int l, double s, double T, std::uint64_t node_cap) {
    if (!(s > 0)) throw InvalidArgument("s must be positive");
    if (!std::isfinite(T)) throw InvalidArgument("cutoff must be finite");
    const auto records = enumerate_subbundles(E, l, -T, node_cap);

    ZetaPartial z;
    z.s = s;
    z.l = l;
    z.cutoff = T;
    z.terms = records.size();
    std::map<long long, ZetaShell> shells;
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        const double term = std::exp(s * it->degree);
        z.partial_sum += term;
        const long long k = static_cast<long long>(std::floor(-it->degree + 1e-12));
        auto& shell = shells[k];
        shell.index = k;
        ++shell.multiplicity;
        shell.sum += term;
    }
    if (!shells.empty()) {
        for (long long k = shells.begin()->first; k <= shells.rbegin()->first; ++k) shells[k].index = k;
    }
    std::vector<const ZetaShell*> complete;
    double incomplete_sum = 0;
    for (auto& [k, shell] : shells) {
        shell.complete = static_cast<double>(k + 1) <= T;
        if (shell.complete) complete.push_back(&shell);
        else incomplete_sum += shell.sum;
        z.shells.push_back(shell);
    }
    if (complete.size() >= 2) {
        const double last = complete[complete.size() - 1]->sum;
        const double prev = complete[complete.size() - 2]->sum;
        if (prev > 0 && last > 0) {
            const double r = last / prev;
            if (r >= 1.0)
                throw DivergenceSuspected("subbundle zeta terms do not decay at s = " + std::to_string(s) +
                                          " (shell ratio " + std::to_string(r) + ")");
            z.tail_bound_estimate = std::max(0.0, last * r / (1.0 - r) - incomplete_sum);
        }
    }
    return z;
}

SemistabilityVerdict semistability_verdict(const ArakelovBundle& E, std::uint64_t node_cap) {
    const int n = E.rank();
    const double mu = slope(E);
    std::string skipped;
    for (int l = 1; l < n; ++l) {
        if (l >= 2 && n > 4) {
            skipped = "subbundles of rank >= 2 are not enumerated for rank " + std::to_string(n);
            continue;
        }
        try {
            const auto records = enumerate_subbundles(E, l, l * (mu + kDegreeTolerance), node_cap);
            for (const auto& r : records)
                if (r.degree / l > mu + kDegreeTolerance) return Unstable{r};
        } catch (const Indeterminate& e) {
            skipped = e.what();
        }
    }
    if (!skipped.empty()) return Inconclusive{skipped};
    return Semistable{};
}

}  // namespace arakelov
