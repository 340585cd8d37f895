#include "arakelov/intlinalg.hpp"

#include <limits>
#include <utility>

namespace arakelov {

namespace {

void row_combine(IntMatrix& M, std::size_t i, std::size_t j, const BigInt& a, const BigInt& b, const BigInt& c,
                 const BigInt& d) {
    // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
    for (std::size_t k = 0; k < M[i].size(); ++k) {
        BigInt x = M[i][k];
        BigInt y = M[j][k];
        M[i][k] = a * x + b * y;
        M[j][k] = c * x + d * y;
    }
}

void row_axpy(IntMatrix& M, std::size_t target, std::size_t source, const BigInt& factor) {
    for (std::size_t k = 0; k < M[target].size(); ++k) M[target][k] -= factor * M[source][k];
}

// Extended gcd with g >= 0: s a + t b = g.
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
    BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    g = r0;
    s = s0;
    t = t0;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& rows, bool with_transform) {
    HermiteResult out;
    out.form = rows;
    IntMatrix& H = out.form;
    const std::size_t r = H.size();
    if (with_transform) {
        out.transform.assign(r, std::vector<BigInt>(r, 0));
        for (std::size_t i = 0; i < r; ++i) out.transform[i][i] = 1;
    }
    if (r == 0) return out;
    const std::size_t m = H[0].size();
    IntMatrix& U = out.transform;

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m && pivot_row < r; ++col) {
        // Euclid on the column below pivot_row.
        for (std::size_t i = pivot_row + 1; i < r; ++i) {
            if (H[i][col] == 0) continue;
            if (H[pivot_row][col] == 0) {
                std::swap(H[pivot_row], H[i]);
                if (with_transform) std::swap(U[pivot_row], U[i]);
                continue;
            }
            BigInt g, s, t;
            const BigInt a = H[pivot_row][col];
            const BigInt b = H[i][col];
            extended_gcd(a, b, g, s, t);
            const BigInt a_g = a / g;
            const BigInt b_g = b / g;
            row_combine(H, pivot_row, i, s, t, -b_g, a_g);
            if (with_transform) row_combine(U, pivot_row, i, s, t, -b_g, a_g);
        }
        if (H[pivot_row][col] == 0) continue;
        if (H[pivot_row][col] < 0) {
            for (auto& x : H[pivot_row]) x = -x;
            if (with_transform)
                for (auto& x : U[pivot_row]) x = -x;
        }
        const BigInt pivot = H[pivot_row][col];
        for (std::size_t i = 0; i < pivot_row; ++i) {
            BigInt q = floor_div(H[i][col], pivot);
            if (q == 0) continue;
            row_axpy(H, i, pivot_row, q);
            if (with_transform) row_axpy(U, i, pivot_row, q);
        }
        ++pivot_row;
    }
    out.rank = static_cast<int>(pivot_row);
    return out;
}

IntMatrix integer_kernel(const IntMatrix& A, int columns) {
    // Row-reduce A^T with transform U: rows of U whose image vanishes span the kernel.
    IntMatrix At(columns, std::vector<BigInt>(A.size(), 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (int j = 0; j < columns; ++j) At[j][i] = A[i][j];
    if (A.empty()) {
        IntMatrix id(columns, std::vector<BigInt>(columns, 0));
        for (int i = 0; i < columns; ++i) id[i][i] = 1;
        return id;
    }
    HermiteResult h = hermite_normal_form(At, true);
    IntMatrix kernel(h.transform.begin() + h.rank, h.transform.end());
    if (kernel.empty()) return kernel;
    return hermite_normal_form(kernel).form;
}

IntMatrix saturate(const IntMatrix& rows, int columns) {
    IntMatrix kernel = integer_kernel(rows, columns);
    IntMatrix sat = integer_kernel(kernel, columns);
    HermiteResult h = hermite_normal_form(sat);
    h.form.resize(h.rank);
    return h.form;
}

int integer_rank(const IntMatrix& rows) { return hermite_normal_form(rows).rank; }

IntMatrix to_int_matrix(const std::vector<ModuleVector>& rows) {
    IntMatrix M;
    M.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<BigInt> row;
        row.reserve(r.size());
        for (long long x : r) row.emplace_back(x);
        M.push_back(std::move(row));
    }
    return M;
}

std::vector<ModuleVector> to_module_vectors(const IntMatrix& rows) {
    std::vector<ModuleVector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        ModuleVector v;
        v.reserve(r.size());
        for (const BigInt& x : r) {
            if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
                throw Error("integer coordinate exceeds 64 bits");
            v.push_back(x.convert_to<long long>());
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<long long> lattice_key(const IntMatrix& rows) {
    HermiteResult h = hermite_normal_form(rows);
    std::vector<long long> key;
    for (int i = 0; i < h.rank; ++i)
        for (const BigInt& x : h.form[i]) key.push_back(x.convert_to<long long>());
    return key;
}

}  // namespace arakelov
