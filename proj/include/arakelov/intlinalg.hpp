#pragma once

#include <vector>

#include "arakelov/common.hpp"

namespace arakelov {

/// Dense integer matrix stored as rows.
using IntMatrix = std::vector<std::vector<BigInt>>;

struct HermiteResult {
    /// Row Hermite normal form; zero rows (if any) are at the bottom.
    IntMatrix form;
    /// Unimodular transform with transform * input == form.
    IntMatrix transform;
    int rank = 0;
};

/// Canonical row Hermite normal form: pivots positive, entries above a pivot
/// reduced into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& rows, bool with_transform = false);

/// Basis (rows) of {x in Z^m : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A, int columns);

/// Basis (rows, in Hermite normal form) of span_Q(rows) intersected with Z^m.
IntMatrix saturate(const IntMatrix& rows, int columns);

int integer_rank(const IntMatrix& rows);

IntMatrix to_int_matrix(const std::vector<ModuleVector>& rows);
std::vector<ModuleVector> to_module_vectors(const IntMatrix& rows);

/// Hashable canonical key of the Z-module spanned by `rows`.
std::vector<long long> lattice_key(const IntMatrix& rows);

}  // namespace arakelov
