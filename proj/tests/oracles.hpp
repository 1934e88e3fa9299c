#pragma once

// Test-only oracles, kept independent of the library paths they check.

#include "hypwalk/word.hpp"

#include <cstdint>
#include <vector>

namespace hypwalk::oracles {

/// Exact sequence counts for the uniform nearest-neighbour F2 walk:
/// counts[d] is the number of increment sequences of length n whose product
/// has word length d (so they sum to 4^n). Computed by the reflected
/// birth-death recursion on the distance; valid for n <= 30 without
/// overflowing the 128-bit accumulators.
std::vector<unsigned __int128> chain_distance_counts(std::size_t n);

/// The same counts by brute force: multiplies out all 4^n increment
/// sequences in the group. Feasible for n <= 9.
std::vector<unsigned __int128> brute_force_distance_counts(std::size_t n);

/// P(d(x0, w_n x0) = d) for the uniform F2 walk, in double precision
/// (forward induction; stable for the n used in the experiments).
std::vector<double> chain_distance_probs(std::size_t n);

/// Exact E d(x0, w_n x0) from the double DP.
double chain_expected_distance(std::size_t n);

/// P(d(x0, w_n x0) <= bound).
double chain_tail_probability(std::size_t n, double bound);

/// Exact harmonic measure of the cylinder of a reduced prefix word under
/// the uniform F2 walk: (1/4) (1/3)^{r-1}.
double harmonic_cylinder_mass(std::size_t r);

} // namespace hypwalk::oracles
