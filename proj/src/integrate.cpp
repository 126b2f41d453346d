#include "sobolev/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace sobolev
{
namespace
{

// Kronrod 15-point abscissae and weights with the embedded 7-point Gauss weights.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half   = 0.5 * (b - a);
    const double fc     = f(center);
    double kronrod      = wgk[7] * fc;
    double gauss        = wg[3] * fc;
    for (int j = 0; j < 7; ++j)
    {
        const double dx  = half * xgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += wgk[j] * sum;
        if (j % 2 == 1)
            gauss += wg[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const IntegrationOptions& opts)
{
    if (a == b)
        return 0.0;
    std::priority_queue<Segment> heap;
    const Segment whole = gauss_kronrod(f, a, b);
    heap.push(whole);
    double total = whole.value;
    double error = whole.error;
    int segments = 1;
    while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
           segments < opts.max_segments)
    {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
        {
            // Interval no longer splittable in floating point; accept it.
            heap.push({worst.a, worst.b, worst.value, 0.0});
            error -= worst.error;
            continue;
        }
        const Segment left  = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    // Re-sum to shed the running-update rounding.
    double sum = 0.0;
    while (!heap.empty())
    {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             const IntegrationOptions& opts)
{
    auto transformed = [&](double phi) {
        const double c = std::cos(phi);
        if (c <= 0.0)
            return 0.0;
        const double r = a + std::tan(phi);
        const double v = f(r) / (c * c);
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate(transformed, 0.0, 0.5 * std::numbers::pi, opts);
}

} // namespace sobolev
