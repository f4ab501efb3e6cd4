#pragma once

namespace marketnet {

inline constexpr const char* version = "0.1.0";

}  // namespace marketnet
