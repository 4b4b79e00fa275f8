#pragma once

namespace dephase {
inline constexpr const char* kVersion = "0.1.0";
}
