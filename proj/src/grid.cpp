#include "lhlll/grid.hpp"

#include <stdexcept>

namespace lhlll {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int sample_from_bits(const std::vector<Rat>& dist,
                     const std::function<int(int)>& bits) {
  // Refine u in [lo_u, lo_u + 2^-t) until it lies inside one CDF cell.
  Rat lo_u = 0, width = 1;
  int t = 0;
  for (;;) {
    Rat cum = 0;
    int k = 0;
    for (const Rat& p : dist) {
      Rat next = cum + p;
      if (lo_u >= cum && lo_u + width <= next) return k;
      cum = next;
      ++k;
    }
    if (t > 4096) throw std::runtime_error("sample_from_bits failed to converge");
    width /= 2;
    if (bits(t++)) lo_u += width;
  }
}

namespace {

// Exact uniform draw in [0, n) by rejection on 64-bit words.
int uniform_from_words(int n, uint64_t key) {
  uint64_t un = static_cast<uint64_t>(n);
  uint64_t limit = UINT64_MAX - (UINT64_MAX % un + 1) % un;  // last accepted value
  for (uint64_t blk = 0;; ++blk) {
    uint64_t w = splitmix64(key + 0x9e3779b97f4a7c15ULL * blk);
    if (w <= limit) return static_cast<int>(w % un);
  }
}

}  // namespace

int SampleGrid::draw(VarIndex i, int64_t j) {
  uint64_t k = splitmix64(splitmix64(splitmix64(seed_ ^ 0x5851f42d4c957f2dULL) ^
                                     static_cast<uint64_t>(i)) ^
                          static_cast<uint64_t>(j));
  if (!shared_checked_) {
    shared_checked_ = true;
    shared_ = fam_->constant_variable_spec();
    if (shared_) {
      uniform_ = true;
      for (const Rat& p : shared_->distribution)
        if (p != Rat(1, shared_->range_size)) uniform_ = false;
    }
  }
  if (shared_ && uniform_) {
    if (shared_->range_size == 2) return static_cast<int>(splitmix64(k) & 1);
    return uniform_from_words(shared_->range_size, k);
  }
  VariableSpec vs = shared_ ? *shared_ : fam_->variable(i);
  uint64_t word = 0;
  auto bits = [&](int t) -> int {
    int blk = t / 64, off = t % 64;
    if (off == 0) word = splitmix64(k + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(blk));
    return static_cast<int>((word >> off) & 1);
  };
  return sample_from_bits(vs.distribution, bits);
}

}  // namespace lhlll
