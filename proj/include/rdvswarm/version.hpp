#pragma once

namespace rdvswarm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rdvswarm
