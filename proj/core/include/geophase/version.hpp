#pragma once

namespace geophase {

inline constexpr const char* kVersion = "0.1.0";

// Version of the JSON report layout emitted by the job runner and the CLI.
inline constexpr int kReportSchema = 1;

}  // namespace geophase
