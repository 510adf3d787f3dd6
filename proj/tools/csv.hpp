#pragma once

#include <string>

#include "dqd/pipeline.hpp"

namespace dqd::cli {

inline constexpr const char* kFormatLine = "# format=1";

/// 12 significant digits, "nan" for missing values.
std::string format_number(double v);

std::string result_header();
std::string result_row(const PointResult& r);
/// Echoed inputs with empty observables and status error:<code>.
std::string error_row(const ModelSpec& spec, int code);

}  // namespace dqd::cli
