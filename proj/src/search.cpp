#include "arakelov/search.hpp"

#include <cmath>

#include "arakelov/zeta.hpp"

namespace arakelov {

namespace {

constexpr std::uint64_t kConfirmationStream = ~std::uint64_t{0};

void check_request(const ArakelovBundle& E, int n, double mu, const SearchOptions& options) {
    if (n <= E.rank()) throw InvalidArgument("the search needs n > rk(E)");
    if (!std::isfinite(mu)) throw InvalidArgument("slope must be finite");
    const int size = E.rank() * n * E.field().degree();
    if (size > kDefaultSearchBudget && !options.allow_large)
        throw InvalidArgument("rk(E) * n * d = " + std::to_string(size) + " exceeds the budget of " +
                              std::to_string(kDefaultSearchBudget) + "; pass the override to proceed");
}

RandomLatticeSpec spec_for(const ArakelovBundle& E, int n, const RandomLatticeSpec& spec) {
    RandomLatticeSpec s = spec;
    s.n = n;
    s.field = E.field();
    return s;
}

enum class TrialResult : char { has_section, section_free, indeterminate };

TrialResult run_trial(const ArakelovBundle& E, const RandomLatticeSpec& spec, double mu, std::uint64_t index,
                      std::uint64_t node_cap) {
    const ArakelovBundle F = random_bundle_for_trial(spec, mu, index);
    try {
        return has_nonzero_section(tensor(E, F), node_cap) ? TrialResult::has_section : TrialResult::section_free;
    } catch (const Indeterminate&) {
        return TrialResult::indeterminate;
    }
}

}  // namespace

std::string to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::found: return "found";
        case SearchStatus::exhausted: return "exhausted";
        case SearchStatus::blocked_by_converse: return "blocked_by_converse";
    }
    return "unknown";
}

double expected_section_count(const ArakelovBundle& E, int n, double mu, const ZetaParams& params) {
    return main_inequality(E, n, n * mu, params).value("value");
}

SearchOutcome find_section_free(const ArakelovBundle& E, int n, double mu, std::uint64_t max_trials,
                                const RandomLatticeSpec& spec, const SearchOptions& options) {
    check_request(E, n, mu, options);
    const RandomLatticeSpec s = spec_for(E, n, spec);
    SearchOutcome outcome;
    ZetaParams zp;
    zp.node_cap = options.node_cap;
    outcome.expected_count = expected_section_count(E, n, mu, zp);

    for (int l = 1; l <= E.rank(); ++l) {
        if (l >= 2 && l < E.rank() && E.rank() > 4) continue;
        const double mu_l = mu_max(E, l, std::nullopt, options.node_cap).value;
        if (mu_l + mu >= converse_threshold(E.field(), n, l, options.epsilon)) {
            outcome.converse_l = l;
            break;
        }
    }
    if (outcome.converse_l) {
        const TrialResult r = run_trial(E, s, mu, kConfirmationStream, options.node_cap);
        outcome.converse_confirmed = r == TrialResult::has_section;
        if (*outcome.converse_confirmed) {
            outcome.status = SearchStatus::blocked_by_converse;
            return outcome;
        }
    }

    const std::uint64_t batch = std::max(1u, options.threads) * 4ULL;
    for (std::uint64_t start = 0; start < max_trials; start += batch) {
        const std::uint64_t count = std::min(batch, max_trials - start);
        std::vector<TrialResult> results(count);
        parallel_for(count, options.threads,
                     [&](std::uint64_t i) { results[i] = run_trial(E, s, mu, start + i, options.node_cap); });
        for (std::uint64_t i = 0; i < count; ++i) {
            if (results[i] == TrialResult::indeterminate) ++outcome.indeterminate;
            if (results[i] != TrialResult::section_free) continue;
            const std::uint64_t index = start + i;
            ArakelovBundle F = random_bundle_for_trial(s, mu, index);
            outcome.certificate = global_sections(tensor(E, F), options.node_cap);
            if (outcome.certificate.truncated || !outcome.certificate.nonzero_sections.empty())
                throw Error("certificate enumeration disagrees with the section test");
            outcome.status = SearchStatus::found;
            outcome.witness = std::move(F);
            outcome.attempts = index + 1;
            return outcome;
        }
    }
    outcome.status = SearchStatus::exhausted;
    outcome.attempts = max_trials;
    return outcome;
}

MonteCarloEstimate success_rate_experiment(const ArakelovBundle& E, int n, double mu, std::uint64_t trials,
                                           const RandomLatticeSpec& spec, const SearchOptions& options) {
    check_request(E, n, mu, options);
    if (trials < 2) throw InvalidArgument("need at least two trials");
    const RandomLatticeSpec s = spec_for(E, n, spec);
    std::vector<TrialResult> results(trials);
    parallel_for(trials, options.threads,
                 [&](std::uint64_t i) { results[i] = run_trial(E, s, mu, i, options.node_cap); });
    std::vector<double> values;
    for (TrialResult r : results)
        if (r != TrialResult::indeterminate) values.push_back(r == TrialResult::section_free ? 1.0 : 0.0);
    const std::uint64_t discarded = trials - values.size();
    if (discarded * 100 > trials)
        throw Indeterminate(discarded, std::to_string(discarded) + " of " + std::to_string(trials) +
                                           " draws hit the node cap (limit 1%)");
    MonteCarloEstimate e = summarize(values);
    e.discarded = discarded;
    e.n = n;
    e.l = E.rank();
    e.p = spec.p;
    e.seed = spec.seed;
    return e;
}

}  // namespace arakelov
