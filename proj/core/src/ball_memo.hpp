#pragma once

#include <mutex>
#include <utility>
#include <vector>

#include "cat0sq/ball.hpp"

namespace cat0sq {

struct DevelopedBall::Memo {
  std::once_flag visibility_once;
  /// Vertices seen along straight segments from each vertex, with distances.
  std::vector<std::vector<std::pair<int, double>>> visibility;
};

}  // namespace cat0sq
