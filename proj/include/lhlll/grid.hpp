#pragma once

#include "lhlll/family.hpp"

#include <cstdint>

namespace lhlll {

/// Supplies the value of grid cell (i, j): the j'th copy of variable x_i.
/// Implementations must be pure in (i, j) for a fixed source instance.
class CellSource {
 public:
  virtual ~CellSource() = default;
  virtual int draw(VarIndex i, int64_t j) = 0;
};

uint64_t splitmix64(uint64_t x);

/// Deterministic seeded grid: cell (i, j) is a pure function of
/// (seed, i, j), sampled exactly from the variable's rational
/// distribution by lazy bit refinement of a uniform [0,1) draw.
class SampleGrid : public CellSource {
 public:
  SampleGrid(std::shared_ptr<const EventFamily> fam, uint64_t seed)
      : fam_(std::move(fam)), seed_(seed) {}

  int draw(VarIndex i, int64_t j) override;
  uint64_t seed() const { return seed_; }

 private:
  std::shared_ptr<const EventFamily> fam_;
  uint64_t seed_;
  bool shared_checked_ = false;
  bool uniform_ = false;
  std::optional<VariableSpec> shared_;
};

/// Exact inverse-CDF sample of `dist` from the uniform real whose binary
/// expansion is bits(0), bits(1), ...; consumes only as many bits as are
/// needed to separate the CDF cell.
int sample_from_bits(const std::vector<Rat>& dist,
                     const std::function<int(int)>& bits);

}  // namespace lhlll
