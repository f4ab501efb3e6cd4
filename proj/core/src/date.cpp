#include "marketnet/date.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "marketnet/error.hpp"

namespace marketnet {

namespace {

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return lengths[month - 1];
}

int parse_digits(std::string_view text, std::string_view whole) {
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(errc::bad_date, "expected YYYY-MM-DD, got '" + std::string(whole) + "'");
    }
  }
  int value = 0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

}  // namespace

std::string Date::to_string() const {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", year, month, day);
  return buffer;
}

Date Date::next_day() const {
  Date next = *this;
  if (++next.day > days_in_month(year, month)) {
    next.day = 1;
    if (++next.month > 12) {
      next.month = 1;
      ++next.year;
    }
  }
  return next;
}

Date Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(errc::bad_date, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  Date date;
  date.year = parse_digits(text.substr(0, 4), text);
  date.month = parse_digits(text.substr(5, 2), text);
  date.day = parse_digits(text.substr(8, 2), text);
  if (date.month < 1 || date.month > 12 || date.day < 1 ||
      date.day > days_in_month(date.year, date.month)) {
    throw Error(errc::bad_date, "invalid calendar date '" + std::string(text) + "'");
  }
  return date;
}

}  // namespace marketnet
