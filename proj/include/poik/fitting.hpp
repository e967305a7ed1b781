#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace poik {

enum class FitModel {
    PowerLaw,  // y = a * x^b, ordinary least squares on (ln x, ln y)
    Linear,    // y = c0 + c1 * x, ordinary least squares
};

struct FitPoint {
    double x = 0.0;
    double y = 0.0;
};

struct FitResult {
    FitModel model = FitModel::Linear;
    double c0 = 0.0;       // amplitude (power law) or intercept (linear)
    double c1 = 0.0;       // exponent (power law) or slope (linear)
    double residual = 0.0; // root-mean-square relative residual
    std::int64_t n_points = 0;
    std::pair<double, double> domain{0.0, 0.0};  // (min x, max x)
};

/// Fit y = a x^b by linear regression on logs. Requires >= 3 points, all
/// coordinates positive, and a non-degenerate abscissa. Points are sorted
/// internally, so the result is bit-identical under input reordering.
FitResult power_law_fit(const std::vector<FitPoint>& points);

/// Ordinary least squares y = c0 + c1 x; same preconditions except that
/// coordinates may be any finite reals.
FitResult linear_fit(const std::vector<FitPoint>& points);

}  // namespace poik
