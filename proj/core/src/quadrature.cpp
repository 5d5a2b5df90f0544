#include "critheat/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "critheat/error.hpp"

namespace critheat {
namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth, int panels) {
    if (!(a < b)) {
        throw InvalidArgument("adaptive_simpson requires a < b");
    }
    if (panels < 1) panels = 1;
    const Simpson s{f, max_depth};
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * width;
        const double hi = (k + 1 == panels) ? b : lo + width;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        sum += s.recurse(lo, hi, flo, fm, fhi, whole, tol / panels, 0);
    }
    return sum;
}

DecadeIntegral integrate_by_decades(const std::function<double(double)>& f, double lo, double hi,
                                    double tol, double divergence_cap, int panels_per_decade) {
    if (!(lo > 0.0) || !(lo < hi)) {
        throw InvalidArgument("integrate_by_decades requires 0 < lo < hi");
    }
    DecadeIntegral out;
    const double decades = std::log10(hi / lo);
    const int count = std::max(1, static_cast<int>(std::ceil(decades - 1e-9)));
    double a = lo;
    for (int k = 0; k < count; ++k) {
        const double b = (k + 1 == count) ? hi : std::min(hi, a * 10.0);
        const double piece = adaptive_simpson(f, a, b, tol / count, 40, panels_per_decade);
        if (k == 0) out.first_decade = piece;
        if (k + 1 == count) out.last_decade = piece;
        out.total += piece;
        if (!std::isfinite(out.total) || std::abs(out.total) > divergence_cap) {
            out.capped = true;
            return out;
        }
        a = b;
    }
    return out;
}

}  // namespace critheat
