#pragma once

namespace beamcoh {

inline constexpr const char* version = "0.1.0";

} // namespace beamcoh
