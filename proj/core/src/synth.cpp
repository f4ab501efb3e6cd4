#include "marketnet/synth.hpp"
#include <algorithm>

#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "marketnet/error.hpp"

namespace marketnet {

namespace {

constexpr Date k_start_date{2006, 1, 2};

int sector_of(int asset, int n_assets, int n_sectors) {
  // Contiguous balanced blocks.
  return static_cast<int>((static_cast<long long>(asset) * n_sectors) / n_assets);
}

std::string padded_name(char prefix, int index, int count) {
  int width = 1;
  for (int top = count - 1; top >= 10; top /= 10) ++width;
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%c%0*d", prefix, std::min(width, 12), index);
  return buffer;
}

}  // namespace

double NormalSampler::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;        // [0, 1)
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double normalized_idiosyncratic(double common_loading, double sector_loading) {
  double residual = 1.0 - common_loading * common_loading - sector_loading * sector_loading;
  if (residual <= 0.0) {
    throw Error(errc::invalid_spec, "loadings leave no idiosyncratic variance");
  }
  return std::sqrt(residual);
}

void SynthSpec::validate() const {
  if (n_assets < 2) throw Error(errc::invalid_spec, "need at least 2 assets");
  if (!(initial_price > 0.0) || !std::isfinite(initial_price)) {
    throw Error(errc::invalid_spec, "initial price must be positive");
  }
  if (regimes.empty()) throw Error(errc::invalid_spec, "need at least one regime");
  int total_days = 0;
  for (const auto& regime : regimes) {
    if (regime.name.empty()) throw Error(errc::invalid_spec, "regime name is empty");
    if (regime.days < 1) throw Error(errc::invalid_spec, "regime '" + regime.name + "' has no days");
    if (regime.common_loading < 0.0 || regime.common_loading >= 1.0) {
      throw Error(errc::invalid_spec, "common loading must lie in [0, 1)");
    }
    if (regime.sector_loading < 0.0 || regime.sector_loading >= 1.0) {
      throw Error(errc::invalid_spec, "sector loading must lie in [0, 1)");
    }
    if (regime.common_loading * regime.common_loading +
            regime.sector_loading * regime.sector_loading >=
        1.0) {
      throw Error(errc::invalid_spec,
                  "regime '" + regime.name + "': loadings leave no idiosyncratic variance");
    }
    if (!(regime.idiosyncratic_sigma > 0.0)) {
      throw Error(errc::invalid_spec, "idiosyncratic sigma must be positive");
    }
    if (regime.n_sectors < 1 || regime.n_sectors > n_assets) {
      throw Error(errc::invalid_spec, "sector count must lie in [1, n_assets]");
    }
    total_days += regime.days;
  }
  if (total_days != n_days) {
    throw Error(errc::invalid_spec, "regime days sum to " + std::to_string(total_days) +
                                        " but n_days is " + std::to_string(n_days));
  }
}

PricePanel generate(const SynthSpec& spec) {
  spec.validate();
  const int n = spec.n_assets;

  PricePanel panel;
  panel.tickers.reserve(n);
  for (int i = 0; i < n; ++i) panel.tickers.push_back(padded_name('A', i, n));
  for (int i = 0; i < n; ++i) {
    int sector = sector_of(i, n, spec.regimes.front().n_sectors);
    panel.sectors[panel.tickers[i]] = padded_name('S', sector, spec.regimes.front().n_sectors);
  }

  panel.dates.reserve(spec.n_days + 1);
  Date date = k_start_date;
  for (int t = 0; t <= spec.n_days; ++t) {
    panel.dates.push_back(date);
    date = date.next_day();
  }

  std::vector<double> log_prices(n, std::log(spec.initial_price));
  panel.prices.reserve((spec.n_days + 1) * n);
  for (int i = 0; i < n; ++i) panel.prices.push_back(spec.initial_price);

  // Draw order per day is fixed: market factor, sector factors, then the
  // per-asset noise, so a given seed always produces the same panel.
  NormalSampler normals(spec.seed);
  std::vector<double> sector_factor;
  for (const auto& regime : spec.regimes) {
    sector_factor.resize(regime.n_sectors);
    for (int day = 0; day < regime.days; ++day) {
      double market = normals.next();
      for (int s = 0; s < regime.n_sectors; ++s) sector_factor[s] = normals.next();
      for (int i = 0; i < n; ++i) {
        double ret = regime.common_loading * market +
                     regime.sector_loading * sector_factor[sector_of(i, n, regime.n_sectors)] +
                     regime.idiosyncratic_sigma * normals.next();
        log_prices[i] += ret;
        panel.prices.push_back(std::exp(log_prices[i]));
      }
    }
  }
  panel.validate();
  return panel;
}

SynthSpec crisis_scenario() {
  SynthSpec spec;
  spec.n_assets = 50;
  spec.n_days = 1200;
  spec.seed = 42;
  spec.initial_price = 100.0;
  for (const auto& [name, beta] :
       {std::pair<const char*, double>{"calm", 0.45}, {"crisis", 0.60}, {"recovery", 0.38}}) {
    RegimeSpec regime;
    regime.name = name;
    regime.days = 400;
    regime.common_loading = beta;
    regime.sector_loading = 0.25;
    regime.n_sectors = 5;
    regime.idiosyncratic_sigma = normalized_idiosyncratic(beta, regime.sector_loading);
    spec.regimes.push_back(std::move(regime));
  }
  return spec;
}

std::vector<WindowSpec> regime_windows(const SynthSpec& spec) {
  spec.validate();
  std::vector<Date> dates;
  dates.reserve(spec.n_days + 1);
  Date date = k_start_date;
  for (int t = 0; t <= spec.n_days; ++t) {
    dates.push_back(date);
    date = date.next_day();
  }
  std::vector<WindowSpec> windows;
  int row = 0;
  for (const auto& regime : spec.regimes) {
    WindowSpec window;
    window.name = regime.name;
    window.start = dates[row];
    row += regime.days;
    window.end = dates[row];
    windows.push_back(std::move(window));
  }
  return windows;
}

SynthSpec parse_synth_spec(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::invalid_spec, std::string("spec is not valid JSON: ") + e.what());
  }
  try {
    SynthSpec spec;
    spec.n_assets = doc.at("n_assets").get<int>();
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.initial_price = doc.value("initial_price", 100.0);
    for (const auto& entry : doc.at("regimes")) {
      RegimeSpec regime;
      regime.name = entry.at("name").get<std::string>();
      regime.days = entry.at("days").get<int>();
      regime.common_loading = entry.at("common_loading").get<double>();
      regime.n_sectors = entry.value("n_sectors", 1);
      regime.sector_loading = entry.value("sector_loading", 0.0);
      if (entry.contains("idiosyncratic_sigma")) {
        regime.idiosyncratic_sigma = entry.at("idiosyncratic_sigma").get<double>();
      } else {
        regime.idiosyncratic_sigma =
            normalized_idiosyncratic(regime.common_loading, regime.sector_loading);
      }
      spec.n_days += regime.days;
      spec.regimes.push_back(std::move(regime));
    }
    if (doc.contains("n_days")) spec.n_days = doc.at("n_days").get<int>();
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::invalid_spec, std::string("bad spec field: ") + e.what());
  }
}

}  // namespace marketnet
