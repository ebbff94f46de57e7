#pragma once

namespace dihedral {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dihedral
