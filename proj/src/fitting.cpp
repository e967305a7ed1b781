#include "poik/fitting.hpp"

#include <algorithm>
#include <cmath>

#include "poik/errors.hpp"

namespace poik {

namespace {

// Sorting first makes the accumulation order (and hence the result bits)
// independent of input order.
std::vector<FitPoint> sorted_copy(const std::vector<FitPoint>& points) {
    std::vector<FitPoint> p = points;
    std::sort(p.begin(), p.end(), [](const FitPoint& a, const FitPoint& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return p;
}

void validate_common(const std::vector<FitPoint>& p) {
    if (p.size() < 3) throw InvalidParamsError("fit requires at least 3 points");
    for (const FitPoint& q : p)
        if (!std::isfinite(q.x) || !std::isfinite(q.y))
            throw InvalidParamsError("fit input contains a non-finite coordinate");
    if (p.front().x == p.back().x)
        throw InvalidParamsError("fit abscissa is degenerate (all x equal)");
}

struct OlsLine {
    double intercept = 0.0;
    double slope = 0.0;
};

OlsLine ols(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return {my - (sxy / sxx) * mx, sxy / sxx};
}

}  // namespace

FitResult power_law_fit(const std::vector<FitPoint>& points) {
    const std::vector<FitPoint> p = sorted_copy(points);
    validate_common(p);
    for (const FitPoint& q : p)
        if (!(q.x > 0.0) || !(q.y > 0.0))
            throw InvalidParamsError("power-law fit requires strictly positive coordinates");

    std::vector<double> lx(p.size()), ly(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        lx[i] = std::log(p[i].x);
        ly[i] = std::log(p[i].y);
    }
    const OlsLine line = ols(lx, ly);

    // Log residuals are relative residuals to first order.
    double ss = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = ly[i] - (line.intercept + line.slope * lx[i]);
        ss += r * r;
    }

    FitResult result;
    result.model = FitModel::PowerLaw;
    result.c0 = std::exp(line.intercept);
    result.c1 = line.slope;
    result.residual = std::sqrt(ss / static_cast<double>(p.size()));
    result.n_points = static_cast<std::int64_t>(p.size());
    result.domain = {p.front().x, p.back().x};
    return result;
}

FitResult linear_fit(const std::vector<FitPoint>& points) {
    const std::vector<FitPoint> p = sorted_copy(points);
    validate_common(p);

    std::vector<double> x(p.size()), y(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        x[i] = p[i].x;
        y[i] = p[i].y;
    }
    const OlsLine line = ols(x, y);

    double ss = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = y[i] - (line.intercept + line.slope * x[i]);
        ss += r * r;
        syy += y[i] * y[i];
    }

    FitResult result;
    result.model = FitModel::Linear;
    result.c0 = line.intercept;
    result.c1 = line.slope;
    // RMS residual normalized by the RMS of y, so exact data gives 0 and the
    // number reads as a relative misfit.
    const double denom = std::sqrt(syy / static_cast<double>(p.size()));
    result.residual = denom > 0.0 ? std::sqrt(ss / static_cast<double>(p.size())) / denom
                                  : std::sqrt(ss / static_cast<double>(p.size()));
    result.n_points = static_cast<std::int64_t>(p.size());
    result.domain = {p.front().x, p.back().x};
    return result;
}

}  // namespace poik
