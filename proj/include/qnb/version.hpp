#pragma once

namespace qnb {
inline constexpr const char* kVersion = "0.1.0";
}
