#ifndef RYDPOL_FFT_HPP
#define RYDPOL_FFT_HPP

#include "rydpol/common.hpp"

#include <fftw3.h>

#include <complex>

namespace rydpol {

/// Thin RAII wrappers around FFTW plans. Plans are created with
/// FFTW_ESTIMATE so the planner choice (and hence the last few ulps of every
/// run) is deterministic. Plan creation is serialized internally; execution
/// on distinct buffers is thread-safe.

/// In-place complex 2D DFT pair on a caller-owned row-major buffer.
class Fft2C {
public:
    Fft2C(int n0, int n1, complexd* data);
    ~Fft2C();
    Fft2C(const Fft2C&) = delete;
    Fft2C& operator=(const Fft2C&) = delete;

    void forward();  // unnormalized
    void backward(); // normalized by 1/(n0*n1)

private:
    int n0_, n1_;
    complexd* data_;
    fftw_plan fwd_, bwd_;
};

/// In-place complex 1D DFT pair.
class Fft1C {
public:
    Fft1C(int n, complexd* data);
    ~Fft1C();
    Fft1C(const Fft1C&) = delete;
    Fft1C& operator=(const Fft1C&) = delete;

    void forward();
    void backward(); // normalized by 1/n

private:
    int n_;
    complexd* data_;
    fftw_plan fwd_, bwd_;
};

/// In-place 2D DST-I (RODFT00) on a caller-owned row-major real buffer.
/// Applying the transform twice scales by 4 (n+1)^2; normalization is the
/// caller's business.
class Dst2R {
public:
    Dst2R(int n0, int n1, double* data);
    ~Dst2R();
    Dst2R(const Dst2R&) = delete;
    Dst2R& operator=(const Dst2R&) = delete;

    void execute();

private:
    fftw_plan plan_;
};

} // namespace rydpol

#endif
