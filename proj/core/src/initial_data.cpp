#include "critheat/initial_data.hpp"

#include <algorithm>
#include <cmath>

#include "critheat/closed_forms.hpp"
#include "critheat/error.hpp"

namespace critheat {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string kind_name(const InitialSpec& spec) {
    return std::visit(Overloaded{
                          [](const ZeroDatum&) { return std::string("zero"); },
                          [](const BumpDatum&) { return std::string("bump"); },
                          [](const ScaledUDatum&) { return std::string("scaled_U"); },
                          [](const CappedSDatum&) { return std::string("capped_S"); },
                          [](const PlateauDatum&) { return std::string("plateau"); },
                          [](const LogGaussianDatum&) { return std::string("log_gaussian"); },
                      },
                      spec);
}

double smooth_bump(double s) {
    const double q = 1.0 - s * s;
    if (q <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / q);
}

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

RadialProfile make_profile(const InitialSpec& spec, const DerivedConstants& c) {
    return std::visit(
        Overloaded{
            [](const ZeroDatum&) -> RadialProfile { return [](double) { return 0.0; }; },
            [](const BumpDatum& b) -> RadialProfile {
                if (!(b.width > 0.0) || !(b.height >= 0.0)) {
                    throw InvalidArgument("bump needs width > 0 and height >= 0");
                }
                return [b](double r) { return b.height * smooth_bump((r - b.center) / b.width); };
            },
            [&c](const ScaledUDatum& s) -> RadialProfile {
                if (!(s.lambda >= 0.0)) throw InvalidArgument("scaled_U needs lambda >= 0");
                (void)ClosedForm::eternal(c);
                return [s, c](double r) { return s.lambda * eval_U(r, 0.0, c); };
            },
            [&c](const CappedSDatum& s) -> RadialProfile {
                if (!(s.cap > 0.0)) throw InvalidArgument("capped_S needs cap > 0");
                if (!(s.fraction > 0.0 && s.fraction < 1.0)) {
                    throw InvalidArgument("capped_S needs fraction in (0, 1)");
                }
                (void)ClosedForm::singular_stationary(c);
                return [s, c](double r) { return s.fraction * std::min(s.cap, eval_S(r, c)); };
            },
            [](const PlateauDatum& s) -> RadialProfile {
                if (!(s.A > 0.0) || !(s.r_knee > 0.0)) {
                    throw InvalidArgument("plateau needs A > 0 and r_knee > 0");
                }
                return [s](double r) {
                    return s.A * (1.0 - smooth_step((r - s.r_knee) / s.r_knee));
                };
            },
            [&c](const LogGaussianDatum& g) -> RadialProfile {
                if (!(g.amplitude >= 0.0) || !(g.width > 0.0)) {
                    throw InvalidArgument("log_gaussian needs amplitude >= 0 and width > 0");
                }
                const double alpha = c.alpha;
                return [g, alpha](double r) {
                    const double s = (std::log(r) - g.center) / g.width;
                    return g.amplitude * std::pow(r, -alpha) * std::exp(-s * s);
                };
            },
        },
        spec);
}

RadialProfile scaled(RadialProfile u0, double factor) {
    return [u0 = std::move(u0), factor](double r) { return factor * u0(r); };
}

}  // namespace critheat
