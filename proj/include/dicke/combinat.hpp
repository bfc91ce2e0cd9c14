#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dicke {

/// Occupation vector: d nonnegative counts that sum to the tensor order n.
/// Entry j counts how often level j appears in a multi-index.
using Occupation = std::vector<int>;

/// Exact wide integer for factorials and multinomials (order <= 30 fits).
using int128 = __int128;

/// Soft size limits for dense enumeration.  The defaults keep every dense
/// object (d^n vectors, moment matrices, LP tableaus) comfortably in memory;
/// callers that know better can widen them through ScopedLimits.
struct DeskLimits {
    int max_order = 12;
    int max_levels = 8;
};

const DeskLimits& desk_limits();

/// RAII override of the process-wide desk limits (tests, power users).
class ScopedLimits {
  public:
    explicit ScopedLimits(DeskLimits widened);
    ~ScopedLimits();
    ScopedLimits(const ScopedLimits&) = delete;
    ScopedLimits& operator=(const ScopedLimits&) = delete;

  private:
    DeskLimits saved_;
};

/// Throws std::domain_error when (n, d) falls outside the active desk limits
/// and std::invalid_argument when n < 0 or d < 1.
void validate_shape(int n, int d);

/// Sum of the occupation entries (the order of the indexed tensor).
int order_of(const Occupation& alpha);

/// True when every entry is nonnegative and the entries sum to n.
bool is_occupation(const Occupation& alpha, int n);

/// Counting map: occupation_of({0,2,0}, 3) = (2,0,1).  Levels are 0-based.
Occupation occupation_of(const std::vector<int>& index, int d);

/// Nondecreasing multi-index with the given occupation:
/// canonical_index((2,0,1)) = (0,0,2).
std::vector<int> canonical_index(const Occupation& alpha);

/// n! as an exact 128-bit integer; throws std::domain_error past n = 33.
int128 factorial(int n);

/// Binomial coefficient C(n, k), exact; 0 when k < 0 or k > n.
int128 binomial(int n, int k);

/// Multinomial coefficient n! / (alpha_1! ... alpha_d!), exact and
/// overflow-checked.  Requires alpha to be an occupation of n.
int128 multinomial(int n, const Occupation& alpha);

/// Exact-to-floating conversion helper for 128-bit counts.
double to_double(int128 v);

/// Dimension of the symmetric subspace: C(n + d - 1, d - 1).
std::size_t sym_dim(int n, int d);

/// All occupations of n into d levels in ascending lexicographic order.
std::vector<Occupation> enumerate_occupations(int n, int d);

/// Position of alpha in enumerate_occupations(n, d), computed directly.
std::size_t rank_of(const Occupation& alpha);

/// Partition representatives: the nonincreasing occupations of n into d parts,
/// in descending lexicographic order.  partitions(3, 2) = [(3,0), (2,1)].
std::vector<Occupation> partitions(int n, int d);

/// All distinct permutations of mu (the symmetric-group orbit), ascending lex.
std::vector<Occupation> orbit(const Occupation& mu);

/// Compact display form, e.g. "(2,0,1)".
std::string format_occupation(const Occupation& alpha);

}  // namespace dicke
