#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace casalter::numerics {

// Gauss-Legendre nodes and weights on [-1, 1], computed once per order and
// cached. Order must be >= 1.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

// Nodes/weights of a composite Gauss-Legendre rule over [a, b] split into
// panels whose widths grow geometrically away from a. Resolves integrands
// that vary fastest near the lower end (exponentially decaying tails).
struct PanelRule {
    std::vector<double> x;
    std::vector<double> w;
};

PanelRule panel_rule(double a, double b, int panels, int order_per_panel);

// Deterministic pairwise summation in index order. Bit-stable regardless of
// how the entries were produced (e.g. filled by concurrent threads).
double pairwise_sum(std::span<const double> v);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v);

// Least-squares line y = a + b*x. Returns slope b, intercept a, RMS residual
// and the standard error of the slope.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    double slope_stderr = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Monotone cubic (Fritsch-Carlson) interpolant on a strictly increasing grid.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    // Throws std::out_of_range for queries outside [x.front(), x.back()].
    double operator()(double xq) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, slope_;
};

}  // namespace casalter::numerics
