#pragma once

#include <cstdint>
#include <vector>

namespace milnor {

// C(n, k) as int64; small arguments only (n stays below a few hundred here).
inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Number of monomials of total degree k in m variables.
inline std::int64_t monomial_count(int nvars, int k) {
    if (k < 0) return 0;
    return binomial(k + nvars - 1, nvars - 1);
}

}  // namespace milnor
