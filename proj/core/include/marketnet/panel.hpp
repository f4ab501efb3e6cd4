#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "marketnet/date.hpp"

namespace marketnet {

enum class CsvFormat { wide, long_form };
enum class FillPolicy { strict, forward };

// Panel of daily closing prices, rows = dates, columns = tickers.
// Tickers are sorted lexicographically; the column index of a ticker is its
// stable vertex id in every graph built downstream.
struct PricePanel {
  std::vector<std::string> tickers;
  std::vector<Date> dates;
  std::vector<double> prices;  // row-major, dates.size() x tickers.size()
  std::map<std::string, std::string> sectors;  // optional ticker -> sector label

  std::size_t rows() const noexcept { return dates.size(); }
  std::size_t cols() const noexcept { return tickers.size(); }
  double price(std::size_t t, std::size_t i) const { return prices[t * tickers.size() + i]; }
  int vertex_id(std::string_view ticker) const;

  void validate() const;  // throws Error(errc::invalid_spec) on broken invariants
};

// Closed date interval labelling one analysis window.
struct WindowSpec {
  std::string name;
  Date start;
  Date end;

  // Parses "name:YYYY-MM-DD:YYYY-MM-DD".
  static WindowSpec parse(std::string_view text);
};

// Log-returns of a panel window. `raw` holds ln(p[t+1]/p[t]); each column of
// `normalized` is the raw column divided by its sample (n-1) standard
// deviation, so every normalized column has unit sample std.
struct ReturnPanel {
  std::vector<std::string> tickers;
  std::vector<Date> dates;  // date of the later price in each return
  std::vector<double> raw;
  std::vector<double> normalized;
  std::vector<double> sigma;

  std::size_t rows() const noexcept { return dates.size(); }
  std::size_t cols() const noexcept { return tickers.size(); }
  double raw_at(std::size_t t, std::size_t i) const { return raw[t * tickers.size() + i]; }
  double normalized_at(std::size_t t, std::size_t i) const {
    return normalized[t * tickers.size() + i];
  }
};

PricePanel parse_csv(std::string_view text, CsvFormat format, FillPolicy fill = FillPolicy::strict);
PricePanel slice_window(const PricePanel& panel, const WindowSpec& window);
ReturnPanel log_returns(const PricePanel& panel);

// Window config file: one "name,start,end" triple per line. Blank lines,
// '#' comments and an optional "name,start,end" header line are skipped.
std::vector<WindowSpec> parse_windows_file(std::string_view text);

}  // namespace marketnet
