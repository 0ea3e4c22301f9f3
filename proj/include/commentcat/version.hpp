#pragma once

namespace commentcat {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace commentcat
