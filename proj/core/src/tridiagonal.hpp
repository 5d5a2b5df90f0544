#pragma once

#include <cstddef>
#include <vector>

namespace critheat::detail {

// LU factors of a tridiagonal matrix for the Thomas algorithm,
// rows lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]. lower[0] and
// upper[n-1] are ignored. No pivoting: rows must be diagonally dominant.
class TridiagonalFactor {
public:
    void factor(const std::vector<double>& lower, const std::vector<double>& diag,
                const std::vector<double>& upper) {
        const std::size_t n = diag.size();
        lower_ = lower;
        cprime_.resize(n);
        inv_.resize(n);
        inv_[0] = 1.0 / diag[0];
        cprime_[0] = upper[0] * inv_[0];
        for (std::size_t i = 1; i < n; ++i) {
            inv_[i] = 1.0 / (diag[i] - lower[i] * cprime_[i - 1]);
            cprime_[i] = (i + 1 < n) ? upper[i] * inv_[i] : 0.0;
        }
    }

    // Overwrites rhs with the solution.
    void solve(std::vector<double>& rhs) const {
        const std::size_t n = inv_.size();
        rhs[0] *= inv_[0];
        for (std::size_t i = 1; i < n; ++i) {
            rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_[i];
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            rhs[i] -= cprime_[i] * rhs[i + 1];
        }
    }

private:
    std::vector<double> lower_, cprime_, inv_;
};

}  // namespace critheat::detail
