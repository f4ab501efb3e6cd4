#include "marketnet/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "marketnet/error.hpp"

namespace marketnet {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(',', start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return fields;
}

double parse_price(std::string_view field, const Date& date, const std::string& ticker) {
  double value = 0.0;
  auto result = std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    throw Error(errc::bad_number, "unparseable price '" + std::string(field) + "' at " +
                                      date.to_string() + " for " + ticker);
  }
  if (!std::isfinite(value)) {
    throw Error(errc::bad_number, "non-finite price at " + date.to_string() + " for " + ticker);
  }
  if (value <= 0.0) {
    throw Error(errc::non_positive_price,
                "price " + std::string(field) + " at " + date.to_string() + " for " + ticker);
  }
  return value;
}

void check_tickers(const std::vector<std::string>& tickers) {
  if (tickers.empty()) throw Error(errc::bad_header, "no ticker columns");
  std::set<std::string> seen;
  for (const auto& ticker : tickers) {
    if (ticker.empty()) throw Error(errc::bad_header, "empty ticker name");
    if (!seen.insert(ticker).second) {
      throw Error(errc::duplicate_entry, "ticker '" + ticker + "' appears twice");
    }
  }
}

// Cells arrive as optional values in (sorted date) x (sorted ticker) order;
// the fill policy resolves the gaps.
PricePanel assemble(std::vector<std::string> tickers, std::vector<Date> dates,
                    std::vector<std::optional<double>> cells, FillPolicy fill) {
  const std::size_t n = tickers.size();
  PricePanel panel;
  panel.tickers = std::move(tickers);
  panel.dates = std::move(dates);
  panel.prices.resize(panel.dates.size() * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<double> last;
    for (std::size_t t = 0; t < panel.dates.size(); ++t) {
      const auto& cell = cells[t * n + i];
      if (cell.has_value()) {
        last = cell;
      } else if (fill == FillPolicy::strict) {
        throw Error(errc::missing_cell, "no price at " + panel.dates[t].to_string() + " for " +
                                            panel.tickers[i]);
      } else if (!last.has_value()) {
        throw Error(errc::leading_gap, "no price before " + panel.dates[t].to_string() + " for " +
                                           panel.tickers[i] + " to fill from");
      }
      panel.prices[t * n + i] = *last;
    }
  }
  panel.validate();
  return panel;
}

PricePanel parse_wide(const std::vector<std::string_view>& lines, FillPolicy fill) {
  auto header = split_fields(lines[0]);
  if (header.empty() || header[0] != "date") {
    throw Error(errc::bad_header, "wide CSV must start with a 'date,TICKER,...' header");
  }
  std::vector<std::string> raw_tickers(header.begin() + 1, header.end());
  check_tickers(raw_tickers);

  // Column order follows the sorted ticker list, not the file.
  std::vector<std::string> tickers = raw_tickers;
  std::sort(tickers.begin(), tickers.end());
  std::vector<std::size_t> column_of(raw_tickers.size());
  for (std::size_t c = 0; c < raw_tickers.size(); ++c) {
    column_of[c] = std::lower_bound(tickers.begin(), tickers.end(), raw_tickers[c]) - tickers.begin();
  }

  const std::size_t n = tickers.size();
  std::vector<std::pair<Date, std::vector<std::optional<double>>>> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    auto fields = split_fields(lines[k]);
    if (fields.size() != n + 1) {
      throw Error(errc::bad_header, "row " + std::to_string(k + 1) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(n + 1));
    }
    Date date = Date::parse(fields[0]);
    std::vector<std::optional<double>> row(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::string_view field = fields[c + 1];
      if (field.empty()) continue;
      row[column_of[c]] = parse_price(field, date, tickers[column_of[c]]);
    }
    rows.emplace_back(date, std::move(row));
  }
  if (rows.empty()) throw Error(errc::empty_window, "CSV has no data rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Date> dates;
  std::vector<std::optional<double>> cells;
  cells.reserve(rows.size() * n);
  for (auto& [date, row] : rows) {
    if (!dates.empty() && dates.back() == date) {
      throw Error(errc::duplicate_entry, "date " + date.to_string() + " appears twice");
    }
    dates.push_back(date);
    for (auto& cell : row) cells.push_back(cell);
  }
  return assemble(std::move(tickers), std::move(dates), std::move(cells), fill);
}

PricePanel parse_long(const std::vector<std::string_view>& lines, FillPolicy fill) {
  auto header = split_fields(lines[0]);
  if (header.size() != 3 || header[0] != "date" || header[1] != "ticker" || header[2] != "close") {
    throw Error(errc::bad_header, "long CSV must start with a 'date,ticker,close' header");
  }

  std::map<std::pair<Date, std::string>, double> observations;
  std::set<Date> date_set;
  std::set<std::string> ticker_set;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    auto fields = split_fields(lines[k]);
    if (fields.size() != 3) {
      throw Error(errc::bad_header,
                  "row " + std::to_string(k + 1) + " has " + std::to_string(fields.size()) +
                      " fields, expected 3");
    }
    Date date = Date::parse(fields[0]);
    std::string ticker(fields[1]);
    if (ticker.empty()) throw Error(errc::bad_header, "empty ticker at " + date.to_string());
    double value = parse_price(fields[2], date, ticker);
    if (!observations.emplace(std::make_pair(date, ticker), value).second) {
      throw Error(errc::duplicate_entry,
                  "(" + date.to_string() + ", " + ticker + ") appears twice");
    }
    date_set.insert(date);
    ticker_set.insert(ticker);
  }
  if (observations.empty()) throw Error(errc::empty_window, "CSV has no data rows");

  std::vector<std::string> tickers(ticker_set.begin(), ticker_set.end());
  std::vector<Date> dates(date_set.begin(), date_set.end());
  const std::size_t n = tickers.size();
  std::vector<std::optional<double>> cells(dates.size() * n);
  for (const auto& [key, value] : observations) {
    std::size_t t = std::lower_bound(dates.begin(), dates.end(), key.first) - dates.begin();
    std::size_t i = std::lower_bound(tickers.begin(), tickers.end(), key.second) - tickers.begin();
    cells[t * n + i] = value;
  }
  return assemble(std::move(tickers), std::move(dates), std::move(cells), fill);
}

}  // namespace

int PricePanel::vertex_id(std::string_view ticker) const {
  auto it = std::lower_bound(tickers.begin(), tickers.end(), ticker);
  if (it == tickers.end() || *it != ticker) return -1;
  return static_cast<int>(it - tickers.begin());
}

void PricePanel::validate() const {
  if (tickers.empty()) throw Error(errc::invalid_spec, "panel has no tickers");
  for (std::size_t i = 0; i < tickers.size(); ++i) {
    if (tickers[i].empty()) throw Error(errc::invalid_spec, "empty ticker name");
    if (i > 0 && !(tickers[i - 1] < tickers[i])) {
      throw Error(errc::invalid_spec, "tickers not sorted/unique at '" + tickers[i] + "'");
    }
  }
  if (dates.empty()) throw Error(errc::invalid_spec, "panel has no rows");
  for (std::size_t t = 1; t < dates.size(); ++t) {
    if (!(dates[t - 1] < dates[t])) {
      throw Error(errc::invalid_spec, "dates not strictly increasing at " + dates[t].to_string());
    }
  }
  if (prices.size() != dates.size() * tickers.size()) {
    throw Error(errc::invalid_spec, "price matrix shape mismatch");
  }
  for (std::size_t t = 0; t < dates.size(); ++t) {
    for (std::size_t i = 0; i < tickers.size(); ++i) {
      double p = price(t, i);
      if (!std::isfinite(p) || p <= 0.0) {
        throw Error(errc::invalid_spec, "non-positive price at " + dates[t].to_string() + " for " +
                                            tickers[i]);
      }
    }
  }
}

WindowSpec WindowSpec::parse(std::string_view text) {
  auto first = text.find(':');
  auto second = text.rfind(':');
  if (first == std::string_view::npos || second == first) {
    throw Error(errc::invalid_spec, "expected name:start:end, got '" + std::string(text) + "'");
  }
  WindowSpec spec;
  spec.name = std::string(text.substr(0, first));
  spec.start = Date::parse(text.substr(first + 1, second - first - 1));
  spec.end = Date::parse(text.substr(second + 1));
  if (spec.name.empty()) throw Error(errc::invalid_spec, "window name is empty");
  if (spec.end < spec.start) {
    throw Error(errc::invalid_spec, "window '" + spec.name + "' ends before it starts");
  }
  return spec;
}

PricePanel parse_csv(std::string_view text, CsvFormat format, FillPolicy fill) {
  auto lines = split_lines(text);
  if (lines.empty()) throw Error(errc::bad_header, "input is empty");
  return format == CsvFormat::wide ? parse_wide(lines, fill) : parse_long(lines, fill);
}

PricePanel slice_window(const PricePanel& panel, const WindowSpec& window) {
  if (window.end < window.start) {
    throw Error(errc::invalid_spec, "window '" + window.name + "' ends before it starts");
  }
  auto lo = std::lower_bound(panel.dates.begin(), panel.dates.end(), window.start);
  auto hi = std::upper_bound(panel.dates.begin(), panel.dates.end(), window.end);
  if (lo >= hi) {
    throw Error(errc::empty_window, "window '" + window.name + "' selects no rows");
  }
  const std::size_t first = lo - panel.dates.begin();
  const std::size_t count = hi - lo;
  if (count < 3) {
    throw Error(errc::window_too_small, "window '" + window.name + "' selects only " +
                                            std::to_string(count) + " rows, need at least 3");
  }
  PricePanel out;
  out.tickers = panel.tickers;
  out.sectors = panel.sectors;
  out.dates.assign(lo, hi);
  const std::size_t n = panel.cols();
  out.prices.assign(panel.prices.begin() + first * n, panel.prices.begin() + (first + count) * n);
  return out;
}

ReturnPanel log_returns(const PricePanel& panel) {
  if (panel.rows() < 3) {
    throw Error(errc::too_few_samples, "need at least 3 price rows, got " +
                                           std::to_string(panel.rows()));
  }
  const std::size_t n = panel.cols();
  const std::size_t t_ret = panel.rows() - 1;
  ReturnPanel out;
  out.tickers = panel.tickers;
  out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
  out.raw.resize(t_ret * n);
  out.normalized.resize(t_ret * n);
  out.sigma.resize(n);

  for (std::size_t t = 0; t < t_ret; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      out.raw[t * n + i] = std::log(panel.price(t + 1, i)) - std::log(panel.price(t, i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (std::size_t t = 0; t < t_ret; ++t) mean += out.raw[t * n + i];
    mean /= static_cast<double>(t_ret);
    double ss = 0.0;
    for (std::size_t t = 0; t < t_ret; ++t) {
      double dev = out.raw[t * n + i] - mean;
      ss += dev * dev;
    }
    if (ss == 0.0) {
      throw Error(errc::zero_variance, "ticker " + panel.tickers[i] + " has constant returns");
    }
    out.sigma[i] = std::sqrt(ss / static_cast<double>(t_ret - 1));
    for (std::size_t t = 0; t < t_ret; ++t) {
      out.normalized[t * n + i] = out.raw[t * n + i] / out.sigma[i];
    }
  }
  return out;
}

std::vector<WindowSpec> parse_windows_file(std::string_view text) {
  std::vector<WindowSpec> windows;
  for (std::string_view line : split_lines(text)) {
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_fields(line);
    if (fields.size() == 3 && fields[0] == "name" && fields[1] == "start") continue;
    if (fields.size() != 3) {
      throw Error(errc::invalid_spec, "expected name,start,end, got '" + std::string(line) + "'");
    }
    WindowSpec spec;
    spec.name = std::string(fields[0]);
    spec.start = Date::parse(fields[1]);
    spec.end = Date::parse(fields[2]);
    if (spec.name.empty()) throw Error(errc::invalid_spec, "window name is empty");
    if (spec.end < spec.start) {
      throw Error(errc::invalid_spec, "window '" + spec.name + "' ends before it starts");
    }
    windows.push_back(std::move(spec));
  }
  if (windows.empty()) throw Error(errc::invalid_spec, "windows file defines no windows");
  return windows;
}

}  // namespace marketnet
