#include "critheat/grid.hpp"

#include <cmath>
#include <string>

#include "critheat/error.hpp"

namespace critheat {

Grid1D::Grid1D(double lo, double hi, std::size_t n) : base_(lo), lo_(lo), hi_(hi), n_(n), h_(0.0) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidArgument("grid requires finite lo < hi");
    }
    if (n < 3) {
        throw InvalidArgument("grid requires at least 3 nodes");
    }
    h_ = (hi - lo) / static_cast<double>(n - 1);
    hi_ = lo_ + static_cast<double>(n - 1) * h_;
}

Grid1D::Grid1D(double base, double h, std::size_t n, double shift)
    : base_(base), shift_(shift), n_(n), h_(h) {
    lo_ = node(0);
    hi_ = node(n - 1);
}

Grid1D Grid1D::from_radii(std::span<const double> radii, double rel_tol) {
    if (radii.size() < 3) {
        throw InvalidArgument("radial grid requires at least 3 nodes");
    }
    for (double r : radii) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw InvalidArgument("radial grid nodes must be positive and finite");
        }
    }
    const double lo = std::log(radii.front());
    const double hi = std::log(radii.back());
    Grid1D grid(lo, hi, radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double expected = std::exp(grid.node(i));
        if (std::abs(radii[i] - expected) > rel_tol * expected) {
            throw InvalidArgument("radial grid is not log-uniform at node " + std::to_string(i));
        }
    }
    return grid;
}

double Grid1D::node(std::size_t i) const noexcept {
    return (base_ + static_cast<double>(i) * h_) + shift_;
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = node(i);
    return out;
}

Grid1D Grid1D::shifted(double offset) const {
    return Grid1D(base_, h_, n_, shift_ + offset);
}

Grid1D Grid1D::refined() const {
    return Grid1D(base_, 0.5 * h_, 2 * n_ - 1, shift_);
}

bool Grid1D::contains(double x) const noexcept {
    const double slack = 1e-12 * h_;
    return x >= lo_ - slack && x <= hi_ + slack;
}

std::string_view to_string(Frame frame) {
    switch (frame) {
        case Frame::Radial: return "radial";
        case Frame::Log: return "log";
        case Frame::Traveling: return "traveling";
    }
    return "unknown";
}

Field::Field(Grid1D g, std::vector<double> v, double time, Frame f)
    : grid(g), values(std::move(v)), t(time), frame(f) {
    if (values.size() != grid.size()) {
        throw InvalidArgument("field length does not match its grid");
    }
    if (!(t >= 0.0)) {
        throw InvalidArgument("field time stamp must be non-negative");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidArgument("field values must be finite and non-negative");
        }
    }
}

Field Field::radial(std::span<const double> radii, std::vector<double> values, double t) {
    return Field(Grid1D::from_radii(radii), std::move(values), t, Frame::Radial);
}

double Field::radius(std::size_t i) const {
    if (frame == Frame::Traveling) {
        throw InvalidArgument("traveling-frame fields have no radius coordinate");
    }
    return std::exp(grid.node(i));
}

}  // namespace critheat
