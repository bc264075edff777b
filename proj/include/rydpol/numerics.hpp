#ifndef RYDPOL_NUMERICS_HPP
#define RYDPOL_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace rydpol {

/// Natural cubic spline through (x, y) samples, x strictly increasing.
/// Evaluation outside [x_front, x_back] clamps to the end values (the
/// curves we interpolate are flat at both ends of their tabulated range).
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool valid() const { return x_.size() >= 2; }

private:
    std::vector<double> x_, y_, y2_;
};

/// Symmetric tridiagonal eigenproblem: diag d[0..n-1], off-diagonal e[0..n-2].
/// Lowest eigenvalues by Sturm-sequence bisection, eigenvectors by inverse
/// iteration with the tridiagonal Thomas solve.
struct TridiagEigen {
    std::vector<double> eigenvalues;               // ascending
    std::vector<std::vector<double>> eigenvectors; // unit 2-norm
};

TridiagEigen tridiag_lowest(const std::vector<double>& d, const std::vector<double>& e,
                            int n_pairs, bool want_vectors = true);

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below x.
int tridiag_count_below(const std::vector<double>& d, const std::vector<double>& e, double x);

/// Composite Simpson rule on [a, b] with n subintervals (n rounded up to even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Smallest m >= n such that m+1 factors into 2, 3 and 5 only. Grids sized
/// this way keep the DST used by the eigensolver preconditioner fast.
int fft_friendly_odd(int n);

/// Geometric grid from a to b (inclusive) with n points, a, b > 0.
std::vector<double> geometric_grid(double a, double b, int n);

/// Uniform grid from a to b (inclusive) with n points.
std::vector<double> uniform_grid(double a, double b, int n);

} // namespace rydpol

#endif
