#include "corrmat/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace corrmat {

void fft_inplace(std::complex<double>* data, int n) {
  if (n <= 0 || (n & (n - 1)) != 0) throw std::invalid_argument("FFT length must be a power of two");

  // bit-reversal permutation
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (int len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * std::numbers::pi / len;
    std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (int k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> t = w * data[i + k + len / 2];
        data[i + k] = u + t;
        data[i + k + len / 2] = u - t;
        w *= wl;
      }
    }
  }
}

void fft2_inplace(std::vector<std::complex<double>>& grid, int m) {
  if (static_cast<int>(grid.size()) != m * m) throw std::invalid_argument("grid size mismatch");
  for (int r = 0; r < m; ++r) fft_inplace(grid.data() + static_cast<std::size_t>(r) * m, m);
  std::vector<std::complex<double>> col(m);
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < m; ++r) col[r] = grid[static_cast<std::size_t>(r) * m + c];
    fft_inplace(col.data(), m);
    for (int r = 0; r < m; ++r) grid[static_cast<std::size_t>(r) * m + c] = col[r];
  }
}

}  // namespace corrmat
