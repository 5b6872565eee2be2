// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstddef>
#include <vector>

namespace adascale::detail {

// Fixed-shape pairwise reduction of term(0) + ... + term(len-1).
template <typename Term>
double tree_sum(std::size_t len, Term term) {
  if (len == 0) return 0.0;
  if (len == 1) return term(0);

  const std::size_t padded = std::bit_ceil(len);
  std::size_t half = padded / 2;

  thread_local std::vector<double> scratch;
  if (scratch.size() < half) scratch.resize(half);
  double* buf = scratch.data();

  // add during load
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t j = i + half;
    buf[i] = term(i) + (j < len ? term(j) : 0.0);
  }
  while (half > 1) {
    half /= 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] += buf[i + half];
  }
  return buf[0];
}

}  // namespace adascale::detail
