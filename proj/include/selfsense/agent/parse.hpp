#pragma once

#include <string>

#include "selfsense/agent/memory.hpp"

namespace selfsense::agent {

/// Extracts the first JSON object embedded in `raw` (markdown fences and
/// surrounding prose are tolerated) and validates the four-field
/// self-assessment. Dimensions are normalized to meters; values that look
/// like millimeters are converted. When the packet carried no image the
/// environment field is normalized to "No visual information available".
/// Throws MalformedResponse on a missing field, non-numeric dimensions, or
/// when no JSON object can be found.
PredictionRecord parse_prediction(const std::string& raw, bool had_image, int iteration);

}  // namespace selfsense::agent
