#pragma once

#include "isotuple/classify.hpp"
#include "isotuple/generators.hpp"
#include "isotuple/verify.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace isotuple {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix format: row-major [[z, ...], ...] with z either a number or [re, im].
// Tuple format:  {"dim": n, "d": d, "components": [matrix, ...]}.

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
Json tuple_to_json(const OperatorTuple& t);
OperatorTuple tuple_from_json(const Json& j);

/// Throws ParseError when the file is missing or is not valid JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json profile_to_json(const DefectProfile& p);
Json bundle_to_json(const Bundle& b);
Json trial_to_json(const TrialRecord& r);

/// Schema v1. Timing lives only under "timing" so that reports can be
/// compared byte for byte once that key is dropped.
Json report_to_json(const CampaignReport& r, bool include_timing = true);

std::string report_csv_header();
std::string report_csv_row(const CampaignReport& r);

}  // namespace isotuple
