#pragma once

#include <cstddef>
#include <vector>

namespace gcf {

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slope
// limiting). Used for soliton tables and for inverting the gradient map
// when matching normals between graph snapshots.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    // x strictly increasing; y arbitrary (limiter preserves monotone runs).
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    // Hermite variant with caller-supplied slopes (no limiting).
    MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> dy);

    double eval(double xq) const;
    double deriv(double xq) const;
    // Solve eval(x) = yq for strictly monotone data; clamps to the table range.
    double invert(double yq) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    std::size_t size() const { return x_.size(); }

private:
    std::size_t locate(double xq) const;
    std::vector<double> x_, y_, d_;
};

}  // namespace gcf
