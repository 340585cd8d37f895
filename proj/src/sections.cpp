#include "arakelov/sections.hpp"

#include <algorithm>
#include <cmath>

#include "arakelov/lattice.hpp"

namespace arakelov {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kExactBand = 1e-9;

double envelope(const ZLatticeView& view, const std::vector<double>& radii) {
    double bound = 0;
    for (std::size_t v = 0; v < radii.size(); ++v)
        bound += (view.place_kinds[v] == PlaceKind::complex ? 2.0 : 1.0) * radii[v] * radii[v];
    return bound;
}

std::vector<double> unit_radii(const ZLatticeView& view) { return std::vector<double>(view.place_forms.size(), 1.0); }

void check_radii(const ZLatticeView& view, const std::vector<double>& radii) {
    if (radii.size() != view.place_forms.size())
        throw InvalidArgument("need one radius per infinite place");
    for (double t : radii)
        if (!(t >= 0) || !std::isfinite(t)) throw InvalidArgument("radii must be finite and nonnegative");
}

}  // namespace

bool within_radii(const ZLatticeView& view, const ModuleVector& x, const std::vector<double>& radii) {
    for (std::size_t v = 0; v < view.place_forms.size(); ++v) {
        const double limit = radii[v] * radii[v];
        const double value = quadratic_value(view.place_forms[v], x);
        if (view.exact_form && std::abs(value - limit) <= kExactBand * std::max(1.0, limit)) {
            const Rational exact_limit = Rational(radii[v]) * Rational(radii[v]);
            if (view.exact_form->evaluate(x) > exact_limit) return false;
            continue;
        }
        if (value > limit + kSlack * std::max(1.0, limit)) return false;
    }
    return true;
}

SectionReport global_sections(const ArakelovBundle& E, std::uint64_t node_cap) {
    const ZLatticeView view = restrict_scalars(E);
    const auto radii = unit_radii(view);
    SectionReport report;
    report.certificate = envelope(view, radii);
    const EllipsoidEnumerator enumerator(view.trace_form);
    const EnumerationStats stats =
        enumerator.run(report.certificate, node_cap, [&](const std::vector<long long>& x, double) {
            if (within_radii(view, x, radii)) report.nonzero_sections.push_back(x);
            return true;
        });
    report.truncated = stats.truncated;
    report.nodes_visited = stats.nodes;
    std::sort(report.nonzero_sections.begin(), report.nonzero_sections.end());
    return report;
}

bool has_nonzero_section(const ArakelovBundle& E, std::uint64_t node_cap) {
    const ZLatticeView view = restrict_scalars(E);
    const auto radii = unit_radii(view);
    const EllipsoidEnumerator enumerator(view.trace_form);
    bool found = false;
    const EnumerationStats stats =
        enumerator.run(envelope(view, radii), node_cap, [&](const std::vector<long long>& x, double) {
            found = within_radii(view, x, radii);
            return !found;
        });
    if (found) return true;
    if (stats.truncated) throw Indeterminate(stats.nodes);
    return false;
}

std::uint64_t count_in_region(const ArakelovBundle& E, const std::vector<double>& radii, std::uint64_t node_cap) {
    const ZLatticeView view = restrict_scalars(E);
    check_radii(view, radii);
    const EllipsoidEnumerator enumerator(view.trace_form);
    std::uint64_t count = 0;
    const EnumerationStats stats =
        enumerator.run(envelope(view, radii), node_cap, [&](const std::vector<long long>& x, double) {
            if (within_radii(view, x, radii)) ++count;
            return true;
        });
    if (stats.truncated) throw Indeterminate(stats.nodes);
    return count;
}

bool minkowski_guarantee(const ArakelovBundle& E) {
    const NumberField& K = E.field();
    const int N = E.rank();
    const double lhs = degree(E) + log_adelic_ball_volume(K, N);
    const double rhs = N * K.degree() * std::log(2.0) + 0.5 * N * std::log(static_cast<double>(K.discriminant()));
    return lhs > rhs;
}

double shortest_vector_length(const ArakelovBundle& E, std::uint64_t node_cap) {
    if (!E.field().is_rational()) throw Unsupported("shortest vector length is defined here for bundles over Q");
    const ZLatticeView view = restrict_scalars(E);
    return std::sqrt(EllipsoidEnumerator(view.trace_form).minimum(node_cap));
}

}  // namespace arakelov
