#include "cvbench/special.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "cvbench/errors.hpp"

namespace cvbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre abscissas (positive half) and weights.
constexpr int kGlPoints = 8;
constexpr double kGlX[kGlPoints] = {
    0.0950125098376374401853, 0.2816035507792589132304, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double kGlW[kGlPoints] = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

// Composite 16-point Gauss-Legendre over [a, b] with `panels` subintervals.
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * h;
        const double half = h / 2.0;
        double acc = 0.0;
        for (int i = 0; i < kGlPoints; ++i)
            acc += kGlW[i] * (f(mid - half * kGlX[i]) + f(mid + half * kGlX[i]));
        total += acc * half;
    }
    return total;
}

// Doubles the panel count until successive estimates agree to `tol`.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double tol, std::size_t initial_panels = 4,
                               std::size_t max_panels = 4096) {
    double prev = gauss_legendre(f, a, b, initial_panels);
    for (std::size_t panels = initial_panels * 2; panels <= max_panels; panels *= 2) {
        const double cur = gauss_legendre(f, a, b, panels);
        if (std::fabs(cur - prev) < tol) return cur;
        prev = cur;
    }
    return prev;
}

// Lentz continued fraction for the incomplete beta (Numerical Recipes form).
double beta_cf(double x, double a, double b) {
    constexpr double eps = 1e-15;
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double incomplete_beta(double x, double a, double b) {
    if (a <= 0.0 || b <= 0.0)
        throw ArgumentError("special.incomplete_beta", "a and b must be positive");
    if (x < 0.0 || x > 1.0)
        throw ArgumentError("special.incomplete_beta", "x must be in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                            (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_front) * beta_cf(x, a, b) / a;
    return 1.0 - std::exp(ln_front) * beta_cf(1.0 - x, b, a) / b;
}

double f_cdf(double x, double d1, double d2) {
    if (d1 <= 0.0 || d2 <= 0.0)
        throw ArgumentError("special.f_cdf", "degrees of freedom must be positive");
    if (x < 0.0) throw ArgumentError("special.f_cdf", "x must be >= 0");
    if (x == 0.0) return 0.0;
    return incomplete_beta(d1 * x / (d1 * x + d2), d1 / 2.0, d2 / 2.0);
}

double t_cdf(double x, double nu) {
    if (nu <= 0.0) throw ArgumentError("special.t_cdf", "nu must be positive");
    if (x == 0.0) return 0.5;
    const double tail = 0.5 * incomplete_beta(nu / (nu + x * x), nu / 2.0, 0.5);
    return x > 0.0 ? 1.0 - tail : tail;
}

double normal_range_cdf(double r, std::size_t k) {
    if (k < 2) throw ArgumentError("special.normal_range_cdf", "k must be >= 2");
    if (r <= 0.0) return 0.0;
    // P(range <= r) = k * Int phi(z) * [Phi(z) - Phi(z - r)]^(k-1) dz, with z
    // the maximum. |z| > 9 contributes < 1e-18 through the phi(z) factor.
    const auto integrand = [r, k](double z) {
        const double span = normal_cdf(z) - normal_cdf(z - r);
        if (span <= 0.0) return 0.0;
        return normal_pdf(z) * std::pow(span, static_cast<double>(k - 1));
    };
    const double value =
        static_cast<double>(k) * adaptive_gauss_legendre(integrand, -9.0, 9.0, 1e-10, 8);
    return std::min(1.0, std::max(0.0, value));
}

double studentized_range_cdf(double q, std::size_t k, double nu) {
    if (k < 2) throw ArgumentError("special.studentized_range_cdf", "k must be >= 2");
    if (nu < 1.0) throw ArgumentError("special.studentized_range_cdf", "nu must be >= 1");
    if (q < 0.0) throw ArgumentError("special.studentized_range_cdf", "q must be >= 0");
    if (q == 0.0) return 0.0;
    if (nu > 1e5) return normal_range_cdf(q, k);

    // s = sqrt(chi2_nu / nu); density c * s^(nu-1) * exp(-nu s^2 / 2).
    const double ln_c = 0.5 * nu * std::log(nu) - std::lgamma(nu / 2.0) -
                        (nu / 2.0 - 1.0) * std::log(2.0);
    const auto ln_density = [nu, ln_c](double s) {
        return ln_c + (nu - 1.0) * std::log(s) - nu * s * s / 2.0;
    };
    const double mode = nu > 1.0 ? std::sqrt((nu - 1.0) / nu) : 1e-8;
    const double ln_peak = ln_density(std::max(mode, 1e-8));
    const double drop = 70.0;  // e^-70 tail cut, far below the 1e-6 target

    double hi = std::max(mode, 1.0);
    while (ln_density(hi) > ln_peak - drop) hi += 0.5;
    double lo = 0.0;
    if (nu > 1.0 && ln_density(1e-10) < ln_peak - drop) {
        double a = 1e-10, b = mode;
        for (int i = 0; i < 80; ++i) {
            const double mid = (a + b) / 2.0;
            (ln_density(mid) < ln_peak - drop ? a : b) = mid;
        }
        lo = a;
    }

    const auto integrand = [&](double s) {
        return std::exp(ln_density(s)) * normal_range_cdf(q * s, k);
    };
    const double value = adaptive_gauss_legendre(integrand, lo, hi, 1e-7, 8, 1024);
    return std::min(1.0, std::max(0.0, value));
}

}  // namespace cvbench
