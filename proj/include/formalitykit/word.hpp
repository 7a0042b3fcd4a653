#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace fkit {

/// Composable word in quiver letters. `start` is the vertex of the empty word (and the source of a
/// non-empty one).
struct Word {
  std::size_t start = 0;
  std::vector<std::uint32_t> letters;

  bool operator==(const Word&) const = default;
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = std::hash<std::size_t>{}(w.start) * 1000003u;
    for (auto l : w.letters) h = (h ^ l) * 1099511628211ull;
    return h;
  }
};

}  // namespace fkit
