#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace marketnet {

// ISO-8601 calendar date. Rows present in an input file define trading days;
// there is no exchange-calendar logic anywhere in the library.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  std::string to_string() const;
  Date next_day() const;

  // Parses "YYYY-MM-DD", throws Error(errc::bad_date) otherwise.
  static Date parse(std::string_view text);
};

}  // namespace marketnet
