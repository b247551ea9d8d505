#pragma once

namespace admmpd {
inline constexpr const char *kVersion = "0.1.0";
}
