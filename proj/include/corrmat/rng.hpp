#ifndef CORRMAT_RNG_HPP
#define CORRMAT_RNG_HPP

#include <array>
#include <cstdint>

namespace corrmat {

// splitmix64 finalizer, used for stream-key derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t n,
                                std::uint64_t rep_index) {
  return mix64(mix64(mix64(master_seed) ^ n) ^ rep_index);
}

// Philox4x32-10 counter-based generator. Identical key + counter gives an
// identical output sequence regardless of how many other streams exist or
// in what order they are consumed.
class Philox {
 public:
  explicit Philox(std::uint64_t key) : key_lo_(static_cast<std::uint32_t>(key)),
                                       key_hi_(static_cast<std::uint32_t>(key >> 32)) {}

  std::uint64_t next_u64() {
    if (idx_ >= 4) refill();
    std::uint64_t lo = block_[idx_], hi = block_[idx_ + 1];
    idx_ += 2;
    return lo | (hi << 32);
  }

  // uniform in [0, 1) with 53 random bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal via the Marsaglia polar method
  double next_normal();

 private:
  void refill();

  std::uint32_t key_lo_, key_hi_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> block_{};
  int idx_ = 4;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// Identifies the random stream of one replication of one matrix size.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t n = 0;
  std::uint64_t rep_index = 0;

  std::uint64_t key() const { return stream_key(master_seed, n, rep_index); }
  Philox generator() const { return Philox(key()); }
  // sub-stream for auxiliary draws (e.g. eigensolver start vectors)
  Philox generator(std::uint64_t tag) const { return Philox(mix64(key() ^ tag)); }
};

}  // namespace corrmat

#endif
