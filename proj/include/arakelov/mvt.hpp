#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "arakelov/numberfield.hpp"
#include "arakelov/sampler.hpp"

namespace arakelov {

struct MonteCarloEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t trials = 0;
    std::uint64_t discarded = 0;
    // configuration echo
    int n = 0;
    int l = 0;
    std::vector<double> radii;
    long long p = 0;
    std::uint64_t seed = 0;
};

/// Mean and standard error (sample variance, n - 1) of per-trial values,
/// accumulated with compensated summation in index order.
MonteCarloEstimate summarize(const std::vector<double>& values);

struct MvtComparison {
    MonteCarloEstimate lhs;
    double rhs = 0;
    double z_score = 0;
};

/// disc^(-n l / 2) * prod_j lambda^n(ball of radius t_j) for the indicator of
/// ||v_j||_w <= t_j at the infinite places and integrality elsewhere.
double mvt_rhs(const NumberField& field, int n, int l, const std::vector<double>& radii);

struct MvtOptions {
    int trials = 2000;
    unsigned threads = 1;
    std::uint64_t node_cap = kDefaultNodeCap;
};

/// Average over random unimodular lattices L in R^n of the number of ordered
/// tuples (v_1..v_l) in L^l of rank l with |v_j| <= t_j. Only K = Q.
MonteCarloEstimate mvt_lhs_estimate(int n, int l, const std::vector<double>& radii, const RandomLatticeSpec& spec,
                                    const MvtOptions& options);

MvtComparison mvt_compare(int n, int l, const std::vector<double>& radii, const RandomLatticeSpec& spec,
                          const MvtOptions& options);

/// Number of ordered tuples (v_1..v_l) of rank l in Z^n with v_j^T G v_j <= t_j^2.
std::uint64_t count_rank_tuples(const Eigen::MatrixXd& gram, const std::vector<double>& radii,
                                std::uint64_t node_cap = kDefaultNodeCap);

/// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn);

}  // namespace arakelov
