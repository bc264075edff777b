#include "rydpol/numerics.hpp"
#include "rydpol/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rydpol {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2) throw ValidationError("spline needs >= 2 matching samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw ValidationError("spline abscissae must increase");

    // second derivatives, natural boundary conditions
    y2_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
        const double p = sig * y2_[i - 1] + 2.0;
        y2_[i] = (sig - 1.0) / p;
        u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) - (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
        u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t k = n - 1; k-- > 1;) y2_[k] = y2_[k] * y2_[k + 1] + u[k];
    y2_[0] = y2_[n - 1] = 0.0;
}

double CubicSpline::operator()(double xq) const {
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    const std::size_t hi = static_cast<std::size_t>(it - x_.begin());
    const std::size_t lo = hi - 1;
    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - xq) / h;
    const double b = (xq - x_[lo]) / h;
    return a * y_[lo] + b * y_[hi] +
           ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * (h * h) / 6.0;
}

int tridiag_count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    // Sturm sequence via the LDL^T pivots; counts negative pivots of T - xI.
    const std::size_t n = d.size();
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        double denom = q;
        if (denom == 0.0) denom = std::numeric_limits<double>::min();
        q = d[i] - x - e[i - 1] * e[i - 1] / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

namespace {

// One inverse-iteration pass: solve (T - sigma I) v = b by the Thomas algorithm.
void tridiag_shift_solve(const std::vector<double>& d, const std::vector<double>& e,
                         double sigma, std::vector<double>& v) {
    const std::size_t n = d.size();
    std::vector<double> c(n), rhs = v;
    double piv = d[0] - sigma;
    if (std::abs(piv) < 1e-300) piv = 1e-300;
    c[0] = (n > 1) ? e[0] / piv : 0.0;
    rhs[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = d[i] - sigma - e[i - 1] * c[i - 1];
        if (std::abs(piv) < 1e-300) piv = (piv < 0 ? -1e-300 : 1e-300);
        c[i] = (i + 1 < n) ? e[i] / piv : 0.0;
        rhs[i] = (rhs[i] - e[i - 1] * rhs[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    v = std::move(rhs);
}

} // namespace

TridiagEigen tridiag_lowest(const std::vector<double>& d, const std::vector<double>& e,
                            int n_pairs, bool want_vectors) {
    const std::size_t n = d.size();
    if (n == 0 || e.size() + 1 != n) throw ValidationError("tridiag_lowest: bad sizes");
    n_pairs = std::min<int>(n_pairs, static_cast<int>(n));

    // Gershgorin bounds
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(e[i - 1]);
        if (i + 1 < n) r += std::abs(e[i]);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }

    TridiagEigen out;
    for (int idx = 0; idx < n_pairs; ++idx) {
        double a = lo, b = hi;
        // bisect until the idx-th eigenvalue is isolated to near machine precision
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (tridiag_count_below(d, e, mid) > idx)
                b = mid;
            else
                a = mid;
            if (b - a <= 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)) + 1e-300)
                break;
        }
        out.eigenvalues.push_back(0.5 * (a + b));
    }

    if (want_vectors) {
        std::vector<double> v(n);
        for (int idx = 0; idx < n_pairs; ++idx) {
            const double ev = out.eigenvalues[idx];
            const double span = hi - lo;
            double sigma = ev + 1e-12 * span; // keep the solve off the exact singularity
            // deterministic start vector
            for (std::size_t i = 0; i < n; ++i)
                v[i] = std::sin(double(idx + 1) * double(i + 1) * 0.37) + 0.5;
            for (int pass = 0; pass < 4; ++pass) {
                // project out previously found vectors (handles near degeneracy)
                for (int j = 0; j < idx; ++j) {
                    const auto& u = out.eigenvectors[j];
                    double dot = std::inner_product(v.begin(), v.end(), u.begin(), 0.0);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u[i];
                }
                tridiag_shift_solve(d, e, sigma, v);
                double nrm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
                if (nrm == 0.0) nrm = 1.0;
                for (auto& x : v) x /= nrm;
            }
            if (v[n / 2] < 0.0 || (v[n / 2] == 0.0 && v[n / 4] < 0.0))
                for (auto& x : v) x = -x;
            out.eigenvectors.push_back(v);
        }
    }
    return out;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

int fft_friendly_odd(int n) {
    auto smooth = [](int m) {
        for (int p : {2, 3, 5})
            while (m % p == 0) m /= p;
        return m == 1;
    };
    while (!smooth(n + 1)) ++n;
    return n;
}

std::vector<double> geometric_grid(double a, double b, int n) {
    if (!(a > 0.0) || !(b > a) || n < 2) throw ValidationError("geometric_grid: need 0 < a < b, n >= 2");
    std::vector<double> g(n);
    const double q = std::log(b / a) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = a * std::exp(q * i);
    g.back() = b;
    return g;
}

std::vector<double> uniform_grid(double a, double b, int n) {
    if (n < 2) throw ValidationError("uniform_grid: n >= 2");
    std::vector<double> g(n);
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = a + h * i;
    g.back() = b;
    return g;
}

} // namespace rydpol
