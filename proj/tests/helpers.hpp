#pragma once

#include <random>

#include "corrbiplot/corrdata.hpp"
#include "corrbiplot/matrix.hpp"

namespace testutil {

using corrbiplot::CorrelationMatrix;
using corrbiplot::Matrix;

inline Matrix random_data(std::mt19937& rng, std::size_t n, std::size_t p) {
  std::normal_distribution<double> gauss;
  Matrix d(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) d(i, j) = gauss(rng);
  return d;
}

/// Random valid correlation matrix: Pearson correlations of a Gaussian sample.
/// n >= p + 2 keeps it positive definite almost surely.
inline CorrelationMatrix random_correlation(std::mt19937& rng, std::size_t p) {
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < p; ++j) labels.push_back("V" + std::to_string(j + 1));
  return corrbiplot::correlation_from_data(random_data(rng, 3 * p + 5, p), labels);
}

/// Random symmetric matrix with entries in [-1, 1], not necessarily PSD.
inline Matrix random_symmetric(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = unif(rng);
  return s;
}

}  // namespace testutil
