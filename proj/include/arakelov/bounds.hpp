#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arakelov/bundle.hpp"

namespace arakelov {

/// zeta(N) for integer N >= 2, to about 1e-15 relative.
double riemann_zeta_int(int N);

enum class VolumeMode { exact, upper_bound };

/// lambda^N(K* O_A^N / K*): V_N / (2 zeta(N)) over Q (exact mode) or the
/// Stirling bound (2 pi e / N)^(dN/2) (pi N)^(-(r1+r2)/2) 2^(-r2/2) / w.
double quotient_volume(const NumberField& field, int N, VolumeMode mode);
double log_quotient_volume(const NumberField& field, int N, VolumeMode mode);

/// Outcome of evaluating one of the closed-form inequalities or thresholds.
struct BoundReport {
    std::string kind;  // theorem | corollary | converse | intro | gap | thresholds | density
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::pair<std::string, double>> values;
    std::string verdict;
    /// Set when a subbundle zeta sum could not be converged to 1e-6 relative.
    bool tail_uncertain = false;

    double value(const std::string& name) const;
};

struct ZetaParams {
    /// Cutoff T for all partial sums; chosen adaptively when absent.
    std::optional<double> cutoff;
    std::uint64_t node_cap = kDefaultNodeCap;
};

/// sum_l disc^(-nl/2) lambda^(nl)(K* O_A^(nl) / K*) zeta_E^(l)(n) exp(l det_degree).
/// Verdict "existence guaranteed" when the sum (tail estimates included) is < 1.
BoundReport main_inequality(const ArakelovBundle& E, int n, double det_degree, const ZetaParams& params = {});

double intro_threshold(const NumberField& field, int n);
double corollary_threshold(const NumberField& field, int n, int l);
double converse_threshold(const NumberField& field, int n, int l, double epsilon);
/// converse(eps = 0) - corollary, which is d log 2.
double threshold_gap(const NumberField& field, int n, int l);

BoundReport thresholds(const NumberField& field, int n, int l, double epsilon);

/// Center density V_n (lambda_1 / 2)^n / covolume of a bundle over Q.
double packing_density(const ArakelovBundle& E, std::uint64_t node_cap = kDefaultNodeCap);
/// zeta(n) / 2^(n-1).
double mh_bound(int n);

BoundReport density_report(const ArakelovBundle& E, std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace arakelov
