#ifndef CORRMAT_FFT_HPP
#define CORRMAT_FFT_HPP

#include <complex>
#include <vector>

namespace corrmat {

// In-place radix-2 complex FFT, unnormalized, sign -1 in the exponent.
// Length must be a power of two.
void fft_inplace(std::complex<double>* data, int n);

// 2D FFT over an m x m row-major grid, both dimensions length m.
void fft2_inplace(std::vector<std::complex<double>>& grid, int m);

}  // namespace corrmat

#endif
