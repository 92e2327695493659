#pragma once

namespace macid {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace macid
