#pragma once

#include <cstdint>
#include <vector>

#include "freemul/transforms.hpp"

namespace freemul {

// Brute-force ground truth over non-crossing partitions. Slow by design:
// the point is independence from the series machinery it checks.

std::uint64_t catalan(int n);

struct NonCrossingPartition {
    std::vector<std::vector<int>> blocks;  // sorted elements of {1..n}
};

// All non-crossing partitions of {1..n}; count = catalan(n). n capped at 16.
std::vector<NonCrossingPartition> enumerate_nc(int n);

// Predicate used by tests: blocks partition {1..n} with no a<b<c<d where
// a,c sit in one block and b,d in another.
bool is_non_crossing(const NonCrossingPartition& p, int n);

// Moment m_n = sum over NC(n) of the product of kappa_{|block|}.
double moment_from_cumulants_nc(const CumulantSequence& k, int n);

// Alternating words in two free variables.
enum class WordPattern { xy_n, y_xy_n, x_yx_n };

// Mixed moment of an alternating word: sum over colored non-crossing
// partitions whose blocks stay within one variable's positions. Patterns
// cover (xy)^n, y(xy)^n, x(yx)^n; n = 0 gives 1, kappa1_y, kappa1_x.
double mixed_moment_xy(const CumulantSequence& kx, const CumulantSequence& ky,
                       WordPattern pattern, int n);

}  // namespace freemul
