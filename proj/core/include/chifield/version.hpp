#pragma once

namespace chifield {

inline constexpr const char* version = "0.1.0";

}  // namespace chifield
