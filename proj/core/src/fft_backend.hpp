#pragma once

#include <complex>

namespace cyclo::detail {

// Complex transforms backed by FFTW3. Plans are created once per size under
// a lock and reused; execution is safe from multiple threads. in and out
// must be distinct buffers of length n.
void fft_forward(const std::complex<double>* in, std::complex<double>* out,
                 int n);
void fft_backward(const std::complex<double>* in, std::complex<double>* out,
                  int n);  // unnormalized inverse

}  // namespace cyclo::detail
