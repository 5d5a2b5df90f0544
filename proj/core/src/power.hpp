#pragma once

#include <cmath>

namespace critheat::detail {

// x^p for x >= 0 with fast paths for exponents that are multiples of 1/2 up to 8.
class Power {
public:
    explicit Power(double p) : p_(p) {
        const double twice = 2.0 * p;
        if (twice == std::round(twice) && twice >= 0.0 && twice <= 16.0) {
            const int k = static_cast<int>(twice);
            whole_ = k / 2;
            half_ = (k % 2) != 0;
            fast_ = true;
        }
    }

    double operator()(double x) const {
        if (x <= 0.0) return p_ == 0.0 ? 1.0 : 0.0;
        if (!fast_) return std::pow(x, p_);
        double r = 1.0;
        double b = x;
        for (int e = whole_; e > 0; e >>= 1) {
            if (e & 1) r *= b;
            b *= b;
        }
        return half_ ? r * std::sqrt(x) : r;
    }

private:
    double p_;
    int whole_ = 0;
    bool half_ = false;
    bool fast_ = false;
};

}  // namespace critheat::detail
