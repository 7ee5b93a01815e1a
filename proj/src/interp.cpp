#include "gcf/interp.hpp"

#include <algorithm>
#include <cmath>

#include "gcf/common.hpp"

namespace gcf {

static std::vector<double> limited_slopes(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 2) return m;
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    m[0] = sec[0];
    m[n - 1] = sec[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) m[i] = 0.5 * (sec[i - 1] + sec[i]);
    // Fritsch-Carlson limiter
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (sec[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
        } else {
            double a = m[i] / sec[i], b = m[i + 1] / sec[i];
            double s = a * a + b * b;
            if (s > 9.0) {
                double tau = 3.0 / std::sqrt(s);
                m[i] = tau * a * sec[i];
                m[i + 1] = tau * b * sec[i];
            }
        }
    }
    return m;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        fail("InterpInvalid", "need >= 2 matching samples");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i] < x_[i + 1])) fail("InterpInvalid", "abscissae not increasing");
    d_ = limited_slopes(x_, y_);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y,
                             std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(dy)) {
    if (x_.size() != y_.size() || x_.size() != d_.size() || x_.size() < 2)
        fail("InterpInvalid", "need >= 2 matching samples");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i] < x_[i + 1])) fail("InterpInvalid", "abscissae not increasing");
}

std::size_t MonotoneCubic::locate(double xq) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double MonotoneCubic::eval(double xq) const {
    std::size_t i = locate(xq);
    double h = x_[i + 1] - x_[i];
    double t = (xq - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::deriv(double xq) const {
    std::size_t i = locate(xq);
    double h = x_[i + 1] - x_[i];
    double t = (xq - x_[i]) / h;
    double t2 = t * t;
    double g00 = (6 * t2 - 6 * t) / h, g10 = 3 * t2 - 4 * t + 1;
    double g01 = (-6 * t2 + 6 * t) / h, g11 = 3 * t2 - 2 * t;
    return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

double MonotoneCubic::invert(double yq) const {
    const bool inc = y_.back() > y_.front();
    double ylo = inc ? y_.front() : y_.back();
    double yhi = inc ? y_.back() : y_.front();
    if (yq <= ylo) return inc ? x_.front() : x_.back();
    if (yq >= yhi) return inc ? x_.back() : x_.front();
    double a = x_.front(), b = x_.back();
    // bisection with a Newton polish; eval is monotone on monotone data
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double f = eval(mid) - yq;
        if ((f > 0.0) == inc)
            b = mid;
        else
            a = mid;
        if (b - a < 1e-15 * (1.0 + std::abs(a))) break;
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 4; ++it) {
        double f = eval(x) - yq, df = deriv(x);
        if (df == 0.0) break;
        double xn = x - f / df;
        if (xn < a || xn > b) break;
        x = xn;
    }
    return x;
}

}  // namespace gcf
