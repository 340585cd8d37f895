#include "arakelov/bounds.hpp"

#include <cmath>
#include <numbers>

#include "arakelov/sections.hpp"
#include "arakelov/zeta.hpp"

namespace arakelov {

namespace {

constexpr double kTailTarget = 1e-6;

/// Adaptive partial sum of zeta_E^(l)(s): widen the cutoff by unit shells
/// until the tail estimate is below kTailTarget of the sum.
ZetaPartial converged_zeta(const ArakelovBundle& E, int l, double s, const ZetaParams& params, bool& uncertain) {
    if (params.cutoff) {
        ZetaPartial z = zeta_partial(E, l, s, *params.cutoff, params.node_cap);
        if (!z.tail_bound_estimate || *z.tail_bound_estimate > kTailTarget * z.partial_sum) uncertain = true;
        return z;
    }
    const double top = mu_max(E, l, std::nullopt, params.node_cap).value * l;
    ZetaPartial z;
    for (int extra = 2; extra <= 10; ++extra) {
        z = zeta_partial(E, l, s, -top + extra, params.node_cap);
        if (z.tail_bound_estimate && *z.tail_bound_estimate <= kTailTarget * z.partial_sum) return z;
    }
    uncertain = true;
    return z;
}

}  // namespace

double BoundReport::value(const std::string& name) const {
    for (const auto& [key, v] : values)
        if (key == name) return v;
    throw InvalidArgument("report has no value '" + name + "'");
}

double riemann_zeta_int(int N) {
    if (N < 2) throw InvalidArgument("zeta(N) needs an integer N >= 2");
    constexpr int M = 1000;
    const double s = N;
    double sum = 0;
    for (int k = M - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double m = M;
    const double tail = std::pow(m, 1 - s) / (s - 1) + 0.5 * std::pow(m, -s) + s * std::pow(m, -s - 1) / 12.0 -
                        s * (s + 1) * (s + 2) * std::pow(m, -s - 3) / 720.0;
    return sum + tail;
}

double log_quotient_volume(const NumberField& field, int N, VolumeMode mode) {
    if (N < 2) throw InvalidArgument("quotient volume needs N >= 2");
    if (mode == VolumeMode::exact) {
        if (!field.is_rational()) throw Unsupported("the exact quotient volume is only available over Q");
        return log_ball_volume(N) - std::log(2.0 * riemann_zeta_int(N));
    }
    const double d = field.degree();
    const double r1 = field.real_places();
    const double r2 = field.complex_places();
    const double pi = std::numbers::pi;
    return 0.5 * d * N * std::log(2.0 * pi * std::numbers::e / N) - 0.5 * (r1 + r2) * std::log(pi * N) -
           0.5 * r2 * std::log(2.0) - std::log(static_cast<double>(field.roots_of_unity()));
}

double quotient_volume(const NumberField& field, int N, VolumeMode mode) {
    return std::exp(log_quotient_volume(field, N, mode));
}

BoundReport main_inequality(const ArakelovBundle& E, int n, double det_degree, const ZetaParams& params) {
    const NumberField& K = E.field();
    const int rk = E.rank();
    if (n <= rk) throw InvalidArgument("the existence theorem needs n > rk(E)");
    const VolumeMode mode = K.is_rational() ? VolumeMode::exact : VolumeMode::upper_bound;
    const double log_disc = std::log(static_cast<double>(K.discriminant()));

    BoundReport report;
    report.kind = "theorem";
    report.inputs = {{"n", n}, {"rank", rk}, {"det_degree", det_degree}};
    double value = 0;
    double tail = 0;
    for (int l = 1; l <= rk; ++l) {
        const double log_weight = -0.5 * n * l * log_disc + log_quotient_volume(K, n * l, mode) + l * det_degree;
        double zeta = 0;
        double zeta_tail = 0;
        if (l == rk) {
            zeta = std::exp(n * degree(E));
        } else {
            const ZetaPartial z = converged_zeta(E, l, n, params, report.tail_uncertain);
            zeta = z.partial_sum;
            zeta_tail = z.tail_bound_estimate.value_or(0.0);
        }
        const double term = std::exp(log_weight) * zeta;
        report.values.emplace_back("term_l" + std::to_string(l), term);
        value += term;
        tail += std::exp(log_weight) * zeta_tail;
    }
    report.values.emplace_back("value", value);
    report.values.emplace_back("tail_estimate", tail);
    if (value + tail < 1.0) report.verdict = K.is_rational() ? "existence guaranteed" : "existence guaranteed (via upper bound)";
    else report.verdict = "not guaranteed";
    return report;
}

double intro_threshold(const NumberField& field, int n) { return corollary_threshold(field, n, 1); }

double corollary_threshold(const NumberField& field, int n, int l) {
    if (n < 2 || l < 1) throw InvalidArgument("thresholds need n >= 2 and l >= 1");
    const double d = field.degree();
    return 0.5 * d * (std::log(n) + std::log(l) - std::log(std::numbers::pi) - 1.0 - std::log(2.0)) +
           0.5 * std::log(static_cast<double>(field.discriminant()));
}

double converse_threshold(const NumberField& field, int n, int l, double epsilon) {
    if (n < 2 || l < 1) throw InvalidArgument("thresholds need n >= 2 and l >= 1");
    const double d = field.degree();
    return 0.5 * d * (std::log(n) + std::log(l) - std::log(std::numbers::pi) - 1.0 + std::log(2.0) + epsilon) +
           0.5 * std::log(static_cast<double>(field.discriminant()));
}

double threshold_gap(const NumberField& field, int n, int l) {
    return converse_threshold(field, n, l, 0.0) - corollary_threshold(field, n, l);
}

BoundReport thresholds(const NumberField& field, int n, int l, double epsilon) {
    BoundReport report;
    report.kind = "thresholds";
    report.inputs = {{"n", n}, {"l", l}, {"epsilon", epsilon}};
    const double corollary = corollary_threshold(field, n, l);
    const double converse = converse_threshold(field, n, l, epsilon);
    report.values = {{"intro", intro_threshold(field, n)},
                     {"corollary", corollary},
                     {"converse", converse},
                     {"gap", threshold_gap(field, n, l)}};
    report.verdict = "sections are forced above the converse threshold; existence holds for large n below the "
                     "corollary threshold";
    return report;
}

double mh_bound(int n) { return riemann_zeta_int(n) / std::pow(2.0, n - 1); }

double packing_density(const ArakelovBundle& E, std::uint64_t node_cap) {
    const double lambda1 = shortest_vector_length(E, node_cap);
    const int n = E.rank();
    return std::exp(log_ball_volume(n) + n * std::log(lambda1 / 2.0) + degree(E));
}

BoundReport density_report(const ArakelovBundle& E, std::uint64_t node_cap) {
    BoundReport report;
    report.kind = "density";
    const int n = E.rank();
    const double lambda1 = shortest_vector_length(E, node_cap);
    const double density = std::exp(log_ball_volume(n) + n * std::log(lambda1 / 2.0) + degree(E));
    report.inputs = {{"n", n}};
    report.values = {{"shortest_length", lambda1}, {"covolume", std::exp(-degree(E))}, {"density", density}};
    if (n >= 2) {
        const double mh = mh_bound(n);
        report.values.emplace_back("mh_bound", mh);
        report.verdict = density >= mh ? "at or above the Minkowski-Hlawka bound" : "below the Minkowski-Hlawka bound";
    } else {
        report.verdict = "rank one";
    }
    return report;
}

}  // namespace arakelov
