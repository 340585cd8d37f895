#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "arakelov/bundle.hpp"

namespace arakelov {

struct SubbundleRecord {
    int rank = 0;
    double degree = 0;
    /// O_K-basis of the saturated submodule.
    std::vector<ModuleVector> basis;
    /// Z-basis in Hermite normal form; two records describe the same
    /// subbundle iff these agree.
    std::vector<ModuleVector> z_basis;
};

/// All saturated rank-l subbundles of degree >= min_degree, sorted by
/// decreasing degree (ties by Z-basis). Rank l >= 2 needs rk(E) <= 4.
/// Throws Indeterminate when the enumeration hits node_cap.
std::vector<SubbundleRecord> enumerate_subbundles(const ArakelovBundle& E, int l, double min_degree,
                                                  std::uint64_t node_cap = kDefaultNodeCap);

struct MuMax {
    double value = 0;
    bool exact = false;
    std::optional<SubbundleRecord> maximizer;
};

/// Maximal slope of a rank-l subbundle. Without a floor the degree of
/// span{e_1..e_l} is used, which some subbundle always attains.
MuMax mu_max(const ArakelovBundle& E, int l, std::optional<double> min_degree_floor = {},
             std::uint64_t node_cap = kDefaultNodeCap);

struct ZetaShell {
    /// Degrees d with -(index + 1) < d <= -index.
    long long index = 0;
    std::uint64_t multiplicity = 0;
    double sum = 0;
    bool complete = false;
};

struct ZetaPartial {
    double s = 0;
    int l = 0;
    double cutoff = 0;
    double partial_sum = 0;
    std::uint64_t terms = 0;
    /// Geometric extrapolation of the terms beyond the cutoff; absent with
    /// fewer than two complete nonempty shells.
    std::optional<double> tail_bound_estimate;
    std::vector<ZetaShell> shells;
};

/// sum of exp(s deg E') over rank-l subbundles with deg E' >= -T.
/// Throws DivergenceSuspected when consecutive shells do not decay.
ZetaPartial zeta_partial(const ArakelovBundle& E, int l, double s, double T,
                         std::uint64_t node_cap = kDefaultNodeCap);

struct Semistable {};
struct Unstable {
    SubbundleRecord witness;
};
struct Inconclusive {
    std::string reason;
};
using SemistabilityVerdict = std::variant<Semistable, Unstable, Inconclusive>;

SemistabilityVerdict semistability_verdict(const ArakelovBundle& E, std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace arakelov
