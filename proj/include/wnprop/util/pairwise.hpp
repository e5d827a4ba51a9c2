#pragma once
#include <complex>
#include <cstddef>
#include <vector>

namespace wnprop {

// Pairwise reduction with a tree fixed by index, so sums are bitwise
// reproducible independent of evaluation order or thread count.
template <class T>
T pairwise_sum(std::vector<T> buf) {
  if (buf.empty()) return T{};
  std::size_t n = buf.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) buf[i] += buf[i + half];
    n = half;
  }
  return buf[0];
}

}  // namespace wnprop
