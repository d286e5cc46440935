#pragma once

namespace infokit {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace infokit
