#ifndef CIGAN_SERIALIZE_HPP
#define CIGAN_SERIALIZE_HPP

#include <string>

#include "cigan/gan.hpp"
#include "cigan/pipeline.hpp"
#include "cigan/resampler.hpp"

namespace cigan {

// All JSON output is UTF-8, 2-space indented, keys sorted, newline-terminated.

std::string gan_config_to_json_text(const GanConfig& config);

/// Overlays the recognized tuning keys from a JSON object onto `base`.
/// Keys outside the tuning surface are ignored here (the CLI owns those);
/// wrongly typed values are errors.
GanConfig gan_config_from_json_text(const std::string& json_text, GanConfig base);

std::string plan_to_json_text(const ResamplePlan& plan);
std::string plan_to_text_table(const ResamplePlan& plan);

std::string report_to_json_text(const PipelineReport& report);
/// Classes as columns, methods as rows, three metric blocks.
std::string report_to_text_table(const PipelineReport& report);

std::string sweep_result_to_json_text(const SweepResult& result);

} // namespace cigan

#endif
