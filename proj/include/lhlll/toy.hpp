#pragma once

#include "lhlll/family.hpp"

#include <memory>

namespace lhlll {

/// Fair-bit family with events A_i = {x_{s*i} = ... = x_{s*i+len-1} = 1},
/// vbl = rsp = [s*i, s*i+len-1]. stride == len-1 gives chained blocks
/// (toy3); stride == len gives disjoint blocks.
std::shared_ptr<EventFamily> make_block_family(std::string name, int stride, int len,
                                               Rat pstar, Rat z, Rat alpha);

/// A_i = three consecutive ones starting at even index 2i; P*=1/8, z=1/3,
/// alpha=9/10.
std::shared_ptr<EventFamily> make_toy3();

/// Single event {x_0 = 1}; P*=1/2, z=9/10, alpha=3/5.
std::shared_ptr<EventFamily> make_single_bit();

/// Disjoint all-ones blocks of width 3; P*=1/8, z=1/2, alpha=1/2.
std::shared_ptr<EventFamily> make_disjoint_blocks();

/// Built-in family lookup by name ("toy3", "single-bit", "disjoint-blocks").
std::shared_ptr<EventFamily> builtin_family(const std::string& name);

}  // namespace lhlll
