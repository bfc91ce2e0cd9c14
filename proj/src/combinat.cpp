#include "dicke/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dicke {

namespace {

DeskLimits g_limits;

int128 checked_mul(int128 a, int128 b) {
    int128 out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::domain_error("128-bit overflow in exact count arithmetic");
    }
    return out;
}

}  // namespace

const DeskLimits& desk_limits() { return g_limits; }

ScopedLimits::ScopedLimits(DeskLimits widened) : saved_(g_limits) {
    g_limits = widened;
}

ScopedLimits::~ScopedLimits() { g_limits = saved_; }

void validate_shape(int n, int d) {
    if (n < 0) throw std::invalid_argument("tensor order n must be >= 0");
    if (d < 1) throw std::invalid_argument("level count d must be >= 1");
    if (n > g_limits.max_order || d > g_limits.max_levels) {
        throw std::domain_error(
            "shape (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
            ") exceeds the desk limits; widen them with ScopedLimits if this "
            "size is intentional");
    }
}

int order_of(const Occupation& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

bool is_occupation(const Occupation& alpha, int n) {
    int sum = 0;
    for (int a : alpha) {
        if (a < 0) return false;
        sum += a;
    }
    return sum == n;
}

Occupation occupation_of(const std::vector<int>& index, int d) {
    if (d < 1) throw std::invalid_argument("level count d must be >= 1");
    Occupation alpha(static_cast<std::size_t>(d), 0);
    for (int level : index) {
        if (level < 0 || level >= d) {
            throw std::invalid_argument("multi-index entry outside [0, d)");
        }
        ++alpha[static_cast<std::size_t>(level)];
    }
    return alpha;
}

std::vector<int> canonical_index(const Occupation& alpha) {
    std::vector<int> index;
    index.reserve(static_cast<std::size_t>(order_of(alpha)));
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] < 0) {
            throw std::invalid_argument("occupation entries must be >= 0");
        }
        index.insert(index.end(), static_cast<std::size_t>(alpha[j]),
                     static_cast<int>(j));
    }
    return index;
}

int128 factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    if (n > 33) throw std::domain_error("factorial(n) exceeds 128 bits");
    int128 out = 1;
    for (int k = 2; k <= n; ++k) out = checked_mul(out, k);
    return out;
}

int128 binomial(int n, int k) {
    if (n < 0) throw std::invalid_argument("binomial with negative n");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    // Multiply/divide incrementally so intermediates stay exact integers.
    int128 out = 1;
    for (int j = 1; j <= k; ++j) {
        out = checked_mul(out, n - k + j);
        out /= j;
    }
    return out;
}

int128 multinomial(int n, const Occupation& alpha) {
    if (!is_occupation(alpha, n)) {
        throw std::invalid_argument("multinomial needs an occupation of n");
    }
    // Chain of binomials: C(n, a_1) C(n - a_1, a_2) ... stays exact.
    int128 out = 1;
    int remaining = n;
    for (int a : alpha) {
        out = checked_mul(out, binomial(remaining, a));
        remaining -= a;
    }
    return out;
}

double to_double(int128 v) {
    return static_cast<double>(v);
}

std::size_t sym_dim(int n, int d) {
    if (n < 0 || d < 1) throw std::invalid_argument("bad shape for sym_dim");
    int128 dim = binomial(n + d - 1, d - 1);
    if (dim > static_cast<int128>(SIZE_MAX)) {
        throw std::domain_error("symmetric dimension does not fit size_t");
    }
    return static_cast<std::size_t>(dim);
}

std::vector<Occupation> enumerate_occupations(int n, int d) {
    validate_shape(n, d);
    std::vector<Occupation> out;
    out.reserve(sym_dim(n, d));
    Occupation alpha(static_cast<std::size_t>(d), 0);
    // Depth-first in entry order yields ascending lexicographic output.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == d - 1) {
            alpha[static_cast<std::size_t>(pos)] = left;
            out.push_back(alpha);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            alpha[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1, left - a);
        }
    };
    rec(rec, 0, n);
    return out;
}

std::size_t rank_of(const Occupation& alpha) {
    const int d = static_cast<int>(alpha.size());
    if (d < 1) throw std::invalid_argument("empty occupation");
    int n = order_of(alpha);
    if (!is_occupation(alpha, n)) {
        throw std::invalid_argument("occupation entries must be >= 0");
    }
    // Count occupations that come earlier: at each position, tuples whose
    // entry is smaller than ours with the prefix fixed.
    int128 rank = 0;
    int left = n;
    for (int pos = 0; pos < d - 1; ++pos) {
        const int a = alpha[static_cast<std::size_t>(pos)];
        for (int smaller = 0; smaller < a; ++smaller) {
            rank += binomial(left - smaller + d - pos - 2, d - pos - 2);
        }
        left -= a;
    }
    return static_cast<std::size_t>(rank);
}

std::vector<Occupation> partitions(int n, int d) {
    validate_shape(n, d);
    std::vector<Occupation> out;
    Occupation mu(static_cast<std::size_t>(d), 0);
    // Nonincreasing fills, largest first, so output is descending lex.
    auto rec = [&](auto&& self, int pos, int left, int cap) -> void {
        if (pos == d - 1) {
            if (left <= cap) {
                mu[static_cast<std::size_t>(pos)] = left;
                out.push_back(mu);
            }
            return;
        }
        for (int a = std::min(cap, left); a * (d - pos) >= left && a >= 0; --a) {
            mu[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1, left - a, a);
        }
    };
    rec(rec, 0, n, n);
    return out;
}

std::vector<Occupation> orbit(const Occupation& mu) {
    for (int a : mu) {
        if (a < 0) throw std::invalid_argument("occupation entries must be >= 0");
    }
    Occupation sorted = mu;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Occupation> out;
    do {
        out.push_back(sorted);
    } while (std::next_permutation(sorted.begin(), sorted.end()));
    return out;
}

std::string format_occupation(const Occupation& alpha) {
    std::string out = "(";
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (j > 0) out += ",";
        out += std::to_string(alpha[j]);
    }
    out += ")";
    return out;
}

}  // namespace dicke
