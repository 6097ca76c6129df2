#include "bss/grid.hpp"

#include <cmath>
#include <string>

#include "bss/errors.hpp"

namespace bss {

SimGrid SimGrid::over(double t_start, double t_end, int n_steps) {
    if (!(t_end > t_start)) throw InvalidParameter("SimGrid: t_end must exceed t_start");
    if (n_steps < 1) throw InvalidParameter("SimGrid: n_steps must be >= 1");
    return SimGrid{t_start, t_end, n_steps};
}

int SimGrid::index_of(double t) const {
    const double x = (t - t_start) / dt();
    const long i = std::lround(x);
    const double tol = 1e-9 * static_cast<double>(n_steps);
    if (i < 0 || i > n_steps || std::fabs(x - static_cast<double>(i)) > tol) {
        throw DomainError("time " + std::to_string(t) + " is not a grid point of [" +
                          std::to_string(t_start) + ", " + std::to_string(t_end) + "]/" +
                          std::to_string(n_steps));
    }
    return static_cast<int>(i);
}

bool SimGrid::covers(double lo, double hi) const {
    const double slack = 1e-9 * (t_end - t_start);
    return t_start <= lo + slack && t_end >= hi - slack;
}

void SamplePath::check_shape() const {
    if (values.size() != static_cast<std::size_t>(grid.n_points())) {
        throw InvalidParameter("SamplePath: value count does not match grid");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidParameter("SamplePath: non-finite value");
    }
}

}  // namespace bss
