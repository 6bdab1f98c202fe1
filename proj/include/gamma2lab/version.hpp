#pragma once

namespace gamma2lab {

inline constexpr const char* kToolName = "gamma2lab";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace gamma2lab
