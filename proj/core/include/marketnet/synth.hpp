#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "marketnet/panel.hpp"

namespace marketnet {

// One regime of the factor model. Daily returns inside the regime are
//   r_i(t) = common_loading * f(t)
//          + sector_loading * g_{sector(i)}(t)
//          + idiosyncratic_sigma * e_i(t)
// with f, g, e independent unit normals. With idiosyncratic_sigma =
// sqrt(1 - common_loading^2 - sector_loading^2) the returns have unit
// variance and the expected cross-sector correlation is common_loading^2.
struct RegimeSpec {
  std::string name;
  int days = 0;
  double common_loading = 0.0;
  double idiosyncratic_sigma = 1.0;
  int n_sectors = 1;
  double sector_loading = 0.0;
};

struct SynthSpec {
  int n_assets = 0;
  int n_days = 0;  // must equal the sum of regime days
  std::uint64_t seed = 0;
  double initial_price = 100.0;
  std::vector<RegimeSpec> regimes;

  void validate() const;  // throws Error(errc::invalid_spec)
};

double normalized_idiosyncratic(double common_loading, double sector_loading);

// Deterministic unit-normal stream: mt19937_64 mapped to (0,1] / [0,1)
// uniforms via (x >> 11) * 2^-53 and passed through the basic Box-Muller
// transform (two uniforms per pair of normals, second value cached).
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Price panel with n_days + 1 rows: the initial price row plus one row per
// generated return day. Dates are consecutive calendar days from 2006-01-02.
// Identical specs (seed included) generate identical panels.
PricePanel generate(const SynthSpec& spec);

// Canonical three-regime scenario: calm (beta 0.45), crisis (0.60), recovery
// (0.38), 400 days each, 50 assets in 5 sectors with sector loading 0.25,
// normalized idiosyncratic noise, fixed seed.
SynthSpec crisis_scenario();

// One window per regime. A regime's window starts at the price row that seeds
// its first return (the previous regime's closing row), so each window yields
// exactly `days` returns.
std::vector<WindowSpec> regime_windows(const SynthSpec& spec);

// JSON spec document, e.g.
// {"n_assets":50,"seed":7,"initial_price":100,
//  "regimes":[{"name":"calm","days":400,"common_loading":0.45,
//              "idiosyncratic_sigma":0.86,"n_sectors":5,"sector_loading":0.25}]}
// n_days defaults to the sum of regime days; idiosyncratic_sigma defaults to
// the normalized value for the regime's loadings.
SynthSpec parse_synth_spec(std::string_view json_text);

}  // namespace marketnet
