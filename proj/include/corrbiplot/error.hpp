#pragma once

#include <stdexcept>
#include <string>

namespace corrbiplot {

enum class Errc {
  non_square,
  asymmetric_beyond_tolerance,
  diagonal_not_one,
  out_of_range_entry,
  zero_variance_column,
  too_few_rows,
  unknown_dataset,
  not_symmetric,
  rank_too_large,
  zero_weight_row,
  zero_total_weight,
  zero_variable_weight,
  dim_out_of_range,
  degenerate_vector,
  degenerate_scene,
  invalid_argument,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace corrbiplot
