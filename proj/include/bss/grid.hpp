#pragma once

#include <vector>

namespace bss {

// Uniform time grid t_i = t_start + i dt, i = 0..n_steps.
struct SimGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int n_steps = 1;

    static SimGrid over(double t_start, double t_end, int n_steps);

    double dt() const { return (t_end - t_start) / static_cast<double>(n_steps); }
    int n_points() const { return n_steps + 1; }
    double point(int i) const { return t_start + static_cast<double>(i) * dt(); }

    // Index of a grid-aligned time; DomainError when t is off the grid.
    int index_of(double t) const;
    bool covers(double lo, double hi) const;
};

enum class PathRole { DriverB, DriverWbar, Sigma, DriftPart, YPart, Z };

struct SamplePath {
    SimGrid grid;
    std::vector<double> values;  // length grid.n_points()
    PathRole role = PathRole::Z;

    double at_index(int i) const { return values[static_cast<std::size_t>(i)]; }
    double at_time(double t) const { return values[static_cast<std::size_t>(grid.index_of(t))]; }
    void check_shape() const;  // throws InvalidParameter on length/NaN violations
};

}  // namespace bss
