#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vclab/compression.hpp"
#include "vclab/concept_class.hpp"
#include "vclab/metric.hpp"
#include "vclab/teaching.hpp"

namespace vclab {

using Json = nlohmann::json;

// Interchange form of a compressed sample (keys sorted, canonical order):
// {"T": int, "Z": [[point,label],...] by point, "f": [[level,point],...] by level}.
Json compressed_to_json(const CompressedSample& cs);
CompressedSample compressed_from_json(const Json& j);

Json labeled_sample_to_json(const LabeledSample& s);

Json teaching_report_to_json(const TeachingReport& r, bool valid);
Json rt_to_json(const ConceptClass& cls, const RTDecomposition& rt);
Json size_report_to_json(const SizeReport& r);
Json verify_report_to_json(const VerifyReport& r);

// "p/q", an integer, or a decimal like "0.25" (parsed exactly).
Rat parse_rational(const std::string& text);
std::string rational_to_string(const Rat& r);

// Comma-separated points with optional a-b ranges: "0,2,5-7".
std::vector<std::size_t> parse_points(const std::string& text);

// {"weights": [int,...]}.
Distribution distribution_from_json(const Json& j);

}  // namespace vclab
