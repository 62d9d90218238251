#pragma once

namespace privaudit {

inline constexpr const char* kToolName = "synth-privaudit";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "synth-privaudit/1";

} // namespace privaudit
