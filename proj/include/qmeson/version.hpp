#pragma once

namespace qmeson {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qmeson
