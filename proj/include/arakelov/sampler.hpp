#pragma once

#include <cstdint>
#include <vector>

#include "arakelov/bundle.hpp"
#include "arakelov/rng.hpp"

namespace arakelov {

inline constexpr long long kDefaultHeckePrime = 1000003;

struct RandomLatticeSpec {
    int n = 2;
    long long p = kDefaultHeckePrime;
    std::uint64_t seed = 0;
    NumberField field = NumberField::rational();
};

/// The lattice {x in Z^n : sum a_i x_i = 0 mod p} scaled by p^(-1/n), a
/// degree zero bundle over Q. Throws InvalidArgument when a = 0 mod p.
ArakelovBundle hecke_unimodular(const RandomLatticeSpec& spec, const std::vector<long long>& a);

/// A random rank-n bundle of the given slope: a random index-p congruence
/// sublattice (over a quadratic field: modulo a split prime ideal of norm
/// >= spec.p, whose equidistribution is heuristic), LLL-reduced and rescaled.
ArakelovBundle random_bundle(const NumberField& field, int n, double target_slope, const RandomLatticeSpec& spec,
                             CounterRng& rng);

/// random_bundle with the stream belonging to a trial index.
ArakelovBundle random_bundle_for_trial(const RandomLatticeSpec& spec, double target_slope, std::uint64_t trial);

/// Smallest split prime >= p of a quadratic field together with the residue
/// of omega modulo the chosen prime ideal above it.
std::pair<long long, long long> split_prime_at_least(const NumberField& field, long long p);

}  // namespace arakelov
