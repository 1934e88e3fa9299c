#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace hypwalk {

/// Exact scalar used throughout the geometry core. Distances in the tree
/// models are integers, Gromov products are half-integers, and the wedge
/// model uses arbitrary small rationals; keeping everything rational makes
/// zero-tolerance comparisons meaningful.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return boost::rational_cast<double>(r);
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? -r : r; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace hypwalk
