#pragma once

#include <cstdint>
#include <optional>

#include "arakelov/bounds.hpp"
#include "arakelov/mvt.hpp"
#include "arakelov/sampler.hpp"
#include "arakelov/sections.hpp"

namespace arakelov {

inline constexpr int kDefaultSearchBudget = 32;

/// Average number of K*-classes of nonzero sections of E (x) F over random F of
/// rank n and slope mu: the left side of the existence theorem with
/// det_degree = n mu.
double expected_section_count(const ArakelovBundle& E, int n, double mu, const ZetaParams& params = {});

enum class SearchStatus { found, exhausted, blocked_by_converse };

std::string to_string(SearchStatus status);

struct SearchOptions {
    double epsilon = 0.05;
    unsigned threads = 1;
    std::uint64_t node_cap = kDefaultNodeCap;
    /// Allow rk(E) * n * d above kDefaultSearchBudget.
    bool allow_large = false;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<ArakelovBundle> witness;
    /// Draws examined; for a success, the index of the witness plus one.
    std::uint64_t attempts = 0;
    std::uint64_t indeterminate = 0;
    double expected_count = 0;
    /// Complete enumeration of E (x) witness (empty when found).
    SectionReport certificate;
    /// Subbundle rank l whose converse inequality holds, if any.
    std::optional<int> converse_l;
    /// Whether the confirmation draw for the converse had a nonzero section.
    std::optional<bool> converse_confirmed;
};

/// Draws F = random_bundle(field, n, mu) for trial indices 0, 1, ... until
/// E (x) F has no nonzero global section. The result is the lowest index
/// success regardless of the thread count.
SearchOutcome find_section_free(const ArakelovBundle& E, int n, double mu, std::uint64_t max_trials,
                                const RandomLatticeSpec& spec, const SearchOptions& options = {});

/// Fraction of draws F with Gamma(E (x) F) = 0.
MonteCarloEstimate success_rate_experiment(const ArakelovBundle& E, int n, double mu, std::uint64_t trials,
                                           const RandomLatticeSpec& spec, const SearchOptions& options = {});

}  // namespace arakelov
