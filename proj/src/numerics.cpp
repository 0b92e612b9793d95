#include "casalter/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "casalter/constants.hpp"

namespace casalter::numerics {

namespace {

GaussLegendre compute_gauss_legendre(int order) {
    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(constants::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[order - 1 - i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[order - 1 - i] = gl.weights[i];
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

PanelRule panel_rule(double a, double b, int panels, int order_per_panel) {
    if (!(b > a)) throw std::invalid_argument("panel_rule: need b > a");
    if (panels < 1 || order_per_panel < 1)
        throw std::invalid_argument("panel_rule: need at least one panel and node");
    const GaussLegendre& gl = gauss_legendre(order_per_panel);

    // Geometric breakpoints: offsets (b-a) * (r^j - 1)/(r^p - 1) with ratio 3.
    const double span = b - a;
    std::vector<double> edges(panels + 1);
    const double r = 3.0;
    const double denom = std::pow(r, panels) - 1.0;
    for (int j = 0; j <= panels; ++j)
        edges[j] = a + span * (std::pow(r, j) - 1.0) / denom;
    edges.front() = a;
    edges.back() = b;

    PanelRule rule;
    rule.x.reserve(static_cast<std::size_t>(panels) * order_per_panel);
    rule.w.reserve(rule.x.capacity());
    for (int j = 0; j < panels; ++j) {
        const double mid = 0.5 * (edges[j] + edges[j + 1]);
        const double half = 0.5 * (edges[j + 1] - edges[j]);
        for (int i = 0; i < order_per_panel; ++i) {
            rule.x.push_back(mid + half * gl.nodes[i]);
            rule.w.push_back(half * gl.weights[i]);
        }
    }
    return rule;
}

namespace {

template <class T>
T pairwise_impl(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n == 0) return T{};
    if (n <= 8) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_impl(v.first(half)) + pairwise_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_impl(v); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
    return pairwise_impl(v);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 points of equal length");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / n);
    if (x.size() > 2) f.slope_stderr = std::sqrt(ss / (n - 2.0) / sxx);
    return f;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2) throw std::invalid_argument("MonotoneCubic: need >= 2 points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("MonotoneCubic: x not increasing");

    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            // Fritsch-Carlson weighted harmonic mean.
            const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
            const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // Endpoint slopes stay within the first/last secant's monotone range.
    for (std::size_t i : {std::size_t{0}, n - 1}) {
        const double di = (i == 0) ? d[0] : d[n - 2];
        if (di == 0.0)
            slope_[i] = 0.0;
        else if (slope_[i] / di < 0.0)
            slope_[i] = 0.0;
        else if (std::abs(slope_[i]) > 3.0 * std::abs(di))
            slope_[i] = 3.0 * di;
    }
}

double MonotoneCubic::operator()(double xq) const {
    if (xq < x_.front() || xq > x_.back())
        throw std::out_of_range("MonotoneCubic: query outside tabulated range");
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

}  // namespace casalter::numerics
