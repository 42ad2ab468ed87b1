#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlm/graph.hpp"

namespace rlm {

/// G(n, lambda/n): every pair {i, j} present independently with probability
/// lambda/n. Runs in O(n + |E|) expected time by jumping over absent pairs
/// with geometric skips. Throws InvalidArgument if lambda < 0 or lambda/n > 1.
Graph gen_erdos_renyi(std::size_t n, double lambda, std::uint64_t seed);

/// Uniform random pairing of half-edges; vertex i carries degrees[i] of them.
/// Throws InvalidArgument if the degree sum is odd.
Multigraph gen_configuration_multigraph(std::span<const std::size_t> degrees,
                                        std::uint64_t seed);

struct SimpleRealization {
  Graph graph;
  /// Pairings drawn, including the accepted one.
  std::size_t attempts = 0;
};

/// Rejection sampler for the configuration model conditioned on simplicity:
/// redraws uniform pairings from one stream of `seed` until one has no
/// self-loops or repeated edges. A pairing is built stub by stub and abandoned
/// at its first conflict; since only complete conflict-free pairings are
/// accepted, the output has exactly the conditional law.
/// Throws BudgetExceeded after max_attempts rejections.
SimpleRealization condition_simple(std::span<const std::size_t> degrees, std::uint64_t seed,
                                   std::size_t max_attempts = 1'000'000'000);

/// Uniform random d-regular simple graph on n vertices.
///
/// Delegates to condition_simple with constant degrees. Every simple d-regular
/// graph arises from exactly (d!)^n pairings (permute the half-edges at each
/// vertex), so conditioning the uniform pairing on simplicity is uniform over
/// d-regular graphs. Throws InvalidArgument when nd is odd or d >= n.
Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                         std::size_t max_attempts = 1'000'000'000);

}  // namespace rlm
