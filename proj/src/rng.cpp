#include "corrmat/rng.hpp"

#include <cmath>

namespace corrmat {

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

void Philox::refill() {
  std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
  std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
  std::uint32_t c2 = 0, c3 = 0;
  std::uint32_t k0 = key_lo_, k1 = key_hi_;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c0, hi0, lo0);
    mulhilo(kPhiloxM1, c2, hi1, lo1);
    std::uint32_t n0 = hi1 ^ c1 ^ k0;
    std::uint32_t n1 = lo1;
    std::uint32_t n2 = hi0 ^ c3 ^ k1;
    std::uint32_t n3 = lo0;
    c0 = n0; c1 = n1; c2 = n2; c3 = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  block_[0] = c0;
  block_[1] = c1;
  block_[2] = c2;
  block_[3] = c3;
  idx_ = 0;
  ++counter_;
}

double Philox::next_normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  for (;;) {
    double u = 2.0 * next_double() - 1.0;
    double v = 2.0 * next_double() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      double f = std::sqrt(-2.0 * std::log(s) / s);
      cached_ = v * f;
      have_cached_ = true;
      return u * f;
    }
  }
}

}  // namespace corrmat
