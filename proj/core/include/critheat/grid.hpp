#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace critheat {

/// Uniform node set lo = x_0 < x_1 < ... < x_{n-1} = hi.
class Grid1D {
public:
    Grid1D(double lo, double hi, std::size_t n);

    /// Builds the log-coordinate grid y_i = ln r_i of a radial node set,
    /// rejecting radii that are not log-uniform to relative tolerance `rel_tol`.
    static Grid1D from_radii(std::span<const double> radii, double rel_tol = 1e-10);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    double node(std::size_t i) const noexcept;
    std::vector<double> nodes() const;

    /// Same spacing, every node moved by `offset`. Offsets accumulate apart
    /// from the base nodes, so shifting by `a` and then by `-a` reproduces
    /// the original nodes bit for bit.
    Grid1D shifted(double offset) const;
    /// Halves the spacing: n -> 2n - 1 on the same interval.
    Grid1D refined() const;

    bool contains(double x) const noexcept;

private:
    Grid1D(double base, double h, std::size_t n, double shift);

    double base_;        // first node before any shift
    double shift_ = 0.0;
    double lo_;
    double hi_;
    std::size_t n_;
    double h_;
};

/// Which variable a Field's grid coordinates stand for.
///  Radial:    grid holds y = ln r, values are u(r = e^y, t)
///  Log:       grid holds y = ln r, values are w(y, t) = r^alpha u
///  Traveling: grid holds z = y + K t, values are Psi(z, t)
enum class Frame { Radial, Log, Traveling };

std::string_view to_string(Frame frame);

/// A sampled solution at one instant.
struct Field {
    Grid1D grid;
    std::vector<double> values;
    double t = 0.0;
    Frame frame = Frame::Traveling;

    Field(Grid1D g, std::vector<double> v, double time, Frame f);

    /// Radial field from explicit radii (must be log-uniform).
    static Field radial(std::span<const double> radii, std::vector<double> values, double t);

    std::size_t size() const noexcept { return values.size(); }
    double coordinate(std::size_t i) const noexcept { return grid.node(i); }
    /// r_i = e^{y_i}; only meaningful for Radial and Log frames.
    double radius(std::size_t i) const;
};

}  // namespace critheat
