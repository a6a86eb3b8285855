#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>

namespace rbfimex {

using Vec2 = Eigen::Vector2d;
using Index = std::int32_t;

}  // namespace rbfimex
