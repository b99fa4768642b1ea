#pragma once

#include <array>
#include <random>
#include <vector>

namespace fixtures {

/// Element of Z^2 * Z^2 in normal form: alternating nonzero syllables from the two factors.
class FreeProductWord {
 public:
  struct Syllable {
    int factor;
    std::array<long, 2> v;
  };

  void multiply(int factor, std::array<long, 2> v) {
    if (v[0] == 0 && v[1] == 0) return;
    if (!syl_.empty() && syl_.back().factor == factor) {
      auto& s = syl_.back().v;
      s[0] += v[0];
      s[1] += v[1];
      if (s[0] == 0 && s[1] == 0) syl_.pop_back();
      return;
    }
    syl_.push_back({factor, v});
  }

  bool trivial() const { return syl_.empty(); }
  const std::vector<Syllable>& syllables() const { return syl_; }

 private:
  std::vector<Syllable> syl_;
};

/// Random reduced word in g1^{+-1}, g2^{+-1} of length 1..max_length, as generator indices
/// (0: g1, 1: g1^-1, 2: g2, 3: g2^-1).
inline std::vector<int> random_reduced_word(std::mt19937_64& rng, int max_length) {
  const int len = std::uniform_int_distribution<int>(1, max_length)(rng);
  std::vector<int> w;
  while (static_cast<int>(w.size()) < len) {
    const int g = std::uniform_int_distribution<int>(0, 3)(rng);
    if (!w.empty() && (w.back() ^ 1) == g) continue;
    w.push_back(g);
  }
  return w;
}

/// Evaluates a word with g1 = (d1 in factor 0) and g2 = (d2 in factor 1).
inline FreeProductWord evaluate(const std::vector<int>& word, std::array<long, 2> d1, std::array<long, 2> d2) {
  FreeProductWord out;
  for (int g : word) {
    const int sign = g % 2 == 0 ? 1 : -1;
    const auto& d = g < 2 ? d1 : d2;
    out.multiply(g < 2 ? 0 : 1, {sign * d[0], sign * d[1]});
  }
  return out;
}

}  // namespace fixtures
