#pragma once

#include <cstdint>
#include <vector>

#include "arakelov/bundle.hpp"

namespace arakelov {

/// Nonzero global sections: module vectors e with ||e||_v <= 1 at every
/// infinite place (finite places impose nothing on the standard module).
struct SectionReport {
    std::vector<ModuleVector> nonzero_sections;  // sorted lexicographically
    bool truncated = false;
    std::uint64_t nodes_visited = 0;
    /// Bound on the trace form inside which the enumeration ran.
    double certificate = 0;
};

SectionReport global_sections(const ArakelovBundle& E, std::uint64_t node_cap = kDefaultNodeCap);

/// Stops at the first section. Throws Indeterminate when the node cap is hit
/// before the question is settled.
bool has_nonzero_section(const ArakelovBundle& E, std::uint64_t node_cap = kDefaultNodeCap);

/// Number of nonzero e with ||e||_v <= t_v at every infinite place. At a
/// complex place the (squared) norm is compared with t_v^2.
std::uint64_t count_in_region(const ArakelovBundle& E, const std::vector<double>& radii,
                              std::uint64_t node_cap = kDefaultNodeCap);

/// Minkowski's convex body theorem applied to the unit ball:
/// exp(deg E) * lambda^N(O_A^N) > 2^(N d) * disc^(N/2). A true result implies
/// a nonzero section.
bool minkowski_guarantee(const ArakelovBundle& E);

/// Length of a shortest nonzero vector of a bundle over Q.
double shortest_vector_length(const ArakelovBundle& E, std::uint64_t node_cap = kDefaultNodeCap);

/// Per-place test ||e||_v <= t_v (exact for rational Grams near the boundary).
bool within_radii(const ZLatticeView& view, const ModuleVector& x, const std::vector<double>& radii);

}  // namespace arakelov
