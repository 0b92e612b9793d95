#pragma once

namespace casalter {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace casalter
