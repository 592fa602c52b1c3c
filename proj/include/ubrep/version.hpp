#pragma once

namespace ubrep {

inline constexpr const char* kVersion = "ubrep 0.1.0";

}  // namespace ubrep
