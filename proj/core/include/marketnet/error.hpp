#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace marketnet {

// Failure conditions surfaced by the library. The CLI maps the category of a
// code to its exit status (data errors -> 2, numeric errors -> 3).
enum class errc {
  io_error,
  bad_header,
  bad_date,
  bad_number,
  non_positive_price,
  duplicate_entry,
  missing_cell,
  leading_gap,
  empty_window,
  window_too_small,
  zero_variance,
  too_few_samples,
  too_few_points,
  non_positive_value,
  degenerate_variance,
  theta_out_of_range,
  top_out_of_range,
  empty_scope,
  unsorted_input,
  invalid_spec,
  unknown_format,
  missing_artifact,
};

enum class error_category { data, numeric };

error_category category_of(errc code) noexcept;
std::string_view name_of(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message);

  errc code() const noexcept { return code_; }
  error_category category() const noexcept { return category_of(code_); }

 private:
  errc code_;
};

}  // namespace marketnet
