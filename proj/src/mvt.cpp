#include "arakelov/mvt.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "arakelov/intlinalg.hpp"
#include "arakelov/lattice.hpp"

namespace arakelov {

namespace {

/// Neumaier's compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

void check_shape(int n, int l, const std::vector<double>& radii) {
    if (l < 1 || l >= n) throw InvalidArgument("mean value formula needs 1 <= l < n");
    if (static_cast<int>(radii.size()) != l) throw InvalidArgument("need one radius per column");
    for (double t : radii)
        if (!(t >= 0) || !std::isfinite(t)) throw InvalidArgument("radii must be finite and nonnegative");
}

struct ShortVector {
    std::vector<long long> coords;
    double norm2;
};

/// Ordered tuples (v_1..v_l) of rank l with v_j from the candidates of norm <= t_j.
std::uint64_t count_tuples(const std::vector<ShortVector>& vectors, const std::vector<double>& radii) {
    const int l = static_cast<int>(radii.size());
    std::vector<std::vector<const ShortVector*>> allowed(l);
    for (int j = 0; j < l; ++j)
        for (const auto& v : vectors)
            if (v.norm2 <= radii[j] * radii[j] * (1.0 + 1e-12)) allowed[j].push_back(&v);
    if (l == 1) return allowed[0].size();

    std::uint64_t count = 0;
    IntMatrix rows;
    std::function<void(int)> extend = [&](int j) {
        if (j == l) {
            ++count;
            return;
        }
        for (const ShortVector* v : allowed[j]) {
            rows.push_back(to_int_matrix({v->coords})[0]);
            if (integer_rank(rows) == j + 1) extend(j + 1);
            rows.pop_back();
        }
    };
    extend(0);
    return count;
}

}  // namespace

std::uint64_t count_rank_tuples(const Eigen::MatrixXd& gram, const std::vector<double>& radii,
                                std::uint64_t node_cap) {
    double tmax = 0;
    for (double t : radii) tmax = std::max(tmax, t);
    std::vector<ShortVector> vectors;
    const EnumerationStats stats =
        EllipsoidEnumerator(gram).run(tmax * tmax, node_cap, [&](const std::vector<long long>& x, double q) {
            vectors.push_back({x, q});
            return true;
        });
    if (stats.truncated) throw Indeterminate(stats.nodes);
    return count_tuples(vectors, radii);
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
    if (threads == 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::uint64_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

MonteCarloEstimate summarize(const std::vector<double>& values) {
    MonteCarloEstimate e;
    e.trials = values.size();
    if (values.empty()) return e;
    CompensatedSum sum;
    for (double v : values) sum.add(v);
    e.mean = sum.value() / static_cast<double>(values.size());
    if (values.size() >= 2) {
        CompensatedSum sq;
        for (double v : values) sq.add((v - e.mean) * (v - e.mean));
        const double variance = sq.value() / static_cast<double>(values.size() - 1);
        e.std_error = std::sqrt(variance / static_cast<double>(values.size()));
    }
    return e;
}

double mvt_rhs(const NumberField& field, int n, int l, const std::vector<double>& radii) {
    check_shape(n, l, radii);
    double log_value = -0.5 * n * l * std::log(static_cast<double>(field.discriminant()));
    double value = 1.0;
    for (double t : radii) {
        if (t == 0) return 0.0;
        log_value += log_adelic_ball_volume(field, n);
        value *= std::pow(t, n * field.degree());
    }
    return std::exp(log_value) * value;
}

MonteCarloEstimate mvt_lhs_estimate(int n, int l, const std::vector<double>& radii, const RandomLatticeSpec& spec,
                                    const MvtOptions& options) {
    check_shape(n, l, radii);
    if (!spec.field.is_rational()) throw Unsupported("the Monte Carlo side is implemented for K = Q only");
    if (options.trials < 30) throw InvalidArgument("at least 30 trials are required");
    RandomLatticeSpec s = spec;
    s.n = n;

    const auto trials = static_cast<std::uint64_t>(options.trials);
    std::vector<double> counts(trials, 0.0);
    std::vector<char> kept(trials, 1);
    parallel_for(trials, options.threads, [&](std::uint64_t i) {
        const ArakelovBundle L = random_bundle_for_trial(s, 0.0, i);
        try {
            counts[i] = static_cast<double>(count_rank_tuples(L.real_grams()[0], radii, options.node_cap));
        } catch (const Indeterminate&) {
            kept[i] = 0;
        }
    });

    std::vector<double> values;
    for (std::uint64_t i = 0; i < trials; ++i)
        if (kept[i]) values.push_back(counts[i]);
    const std::uint64_t discarded = trials - values.size();
    if (discarded * 100 > trials)
        throw Indeterminate(discarded, std::to_string(discarded) + " of " + std::to_string(trials) +
                                           " trials hit the node cap (limit 1%)");

    MonteCarloEstimate e = summarize(values);
    e.discarded = discarded;
    e.n = n;
    e.l = l;
    e.radii = radii;
    e.p = spec.p;
    e.seed = spec.seed;
    return e;
}

MvtComparison mvt_compare(int n, int l, const std::vector<double>& radii, const RandomLatticeSpec& spec,
                          const MvtOptions& options) {
    MvtComparison c;
    c.rhs = mvt_rhs(spec.field, n, l, radii);
    c.lhs = mvt_lhs_estimate(n, l, radii, spec, options);
    c.z_score = c.lhs.std_error > 0 ? (c.lhs.mean - c.rhs) / c.lhs.std_error : 0.0;
    return c;
}

}  // namespace arakelov
