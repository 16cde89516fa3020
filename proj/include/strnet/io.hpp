#pragma once

#include <filesystem>
#include <string>

#include "strnet/trainer.hpp"

namespace strnet {

// Weight files are a single JSON document:
//   {"n": 2, "r": 7, "W_a": [[...], ...], "W_b": [[...], ...], "W_c": [[...], ...]}
// with matrices as row-major nested arrays. Numbers are written with 17
// significant digits, so values round-trip exactly through the decimal
// form. Parse and schema errors throw std::runtime_error with a message
// locating the offending field.
std::string weights_to_json(const WeightSet& w);
WeightSet weights_from_json(const std::string& text);
void save_weights(const WeightSet& w, const std::filesystem::path& path);
WeightSet load_weights(const std::filesystem::path& path);

// Trace files are JSON lines, one self-describing record per evaluation
// sample: {"items_seen":..., "epsilon":..., "max_weight":..., "skipped_count":...}
std::string trace_to_jsonl(const RunTrace& trace);
void save_trace(const RunTrace& trace, const std::filesystem::path& path);

}  // namespace strnet
