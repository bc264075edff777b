#include "rydpol/fft.hpp"

#include <mutex>

namespace rydpol {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
fftw_complex* fc(complexd* p) { return reinterpret_cast<fftw_complex*>(p); }
} // namespace

Fft2C::Fft2C(int n0, int n1, complexd* data) : n0_(n0), n1_(n1), data_(data) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_2d(n0, n1, fc(data), fc(data), FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(n0, n1, fc(data), fc(data), FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw SolverError("fftw: 2D plan creation failed");
}

Fft2C::~Fft2C() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
}

void Fft2C::forward() { fftw_execute(fwd_); }

void Fft2C::backward() {
    fftw_execute(bwd_);
    const double s = 1.0 / (static_cast<double>(n0_) * n1_);
    const long n = static_cast<long>(n0_) * n1_;
    for (long i = 0; i < n; ++i) data_[i] *= s;
}

Fft1C::Fft1C(int n, complexd* data) : n_(n), data_(data) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(n, fc(data), fc(data), FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, fc(data), fc(data), FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw SolverError("fftw: 1D plan creation failed");
}

Fft1C::~Fft1C() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
}

void Fft1C::forward() { fftw_execute(fwd_); }

void Fft1C::backward() {
    fftw_execute(bwd_);
    const double s = 1.0 / n_;
    for (int i = 0; i < n_; ++i) data_[i] *= s;
}

Dst2R::Dst2R(int n0, int n1, double* data) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_r2r_2d(n0, n1, data, data, FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
    if (!plan_) throw SolverError("fftw: DST plan creation failed");
}

Dst2R::~Dst2R() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
}

void Dst2R::execute() { fftw_execute(plan_); }

} // namespace rydpol
