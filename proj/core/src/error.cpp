#include "marketnet/error.hpp"

namespace marketnet {

error_category category_of(errc code) noexcept {
  switch (code) {
    case errc::zero_variance:
    case errc::too_few_samples:
    case errc::too_few_points:
    case errc::non_positive_value:
    case errc::degenerate_variance:
      return error_category::numeric;
    default:
      return error_category::data;
  }
}

std::string_view name_of(errc code) noexcept {
  switch (code) {
    case errc::io_error: return "io_error";
    case errc::bad_header: return "bad_header";
    case errc::bad_date: return "bad_date";
    case errc::bad_number: return "bad_number";
    case errc::non_positive_price: return "non_positive_price";
    case errc::duplicate_entry: return "duplicate_entry";
    case errc::missing_cell: return "missing_cell";
    case errc::leading_gap: return "leading_gap";
    case errc::empty_window: return "empty_window";
    case errc::window_too_small: return "window_too_small";
    case errc::zero_variance: return "zero_variance";
    case errc::too_few_samples: return "too_few_samples";
    case errc::too_few_points: return "too_few_points";
    case errc::non_positive_value: return "non_positive_value";
    case errc::degenerate_variance: return "degenerate_variance";
    case errc::theta_out_of_range: return "theta_out_of_range";
    case errc::top_out_of_range: return "top_out_of_range";
    case errc::empty_scope: return "empty_scope";
    case errc::unsorted_input: return "unsorted_input";
    case errc::invalid_spec: return "invalid_spec";
    case errc::unknown_format: return "unknown_format";
    case errc::missing_artifact: return "missing_artifact";
  }
  return "unknown";
}

Error::Error(errc code, const std::string& message)
    : std::runtime_error(std::string(name_of(code)) + ": " + message), code_(code) {}

}  // namespace marketnet
