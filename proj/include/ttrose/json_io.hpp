#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttrose/census.hpp"
#include "ttrose/family.hpp"
#include "ttrose/folds.hpp"
#include "ttrose/nielsen.hpp"
#include "ttrose/whitehead.hpp"

namespace ttrose {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const RoseMap& g);
json to_json(const WhiteheadGraph& g);
json to_json(const INPCandidate& inp);
json to_json(const PNPFreeCertificate& c);
json to_json(const Certificate& c);
json to_json(const FoldSequence& seq);
json to_json(const CensusRow& row);
json to_json(const UpperResult& res);
json to_json(const EntropyEstimate& e);

CensusRow census_row_from_json(const json& j);

/// Reads census rows from JSON lines or CSV written by `ttrose census`.
std::vector<CensusRow> read_census_rows(std::istream& in);

std::string census_csv_header();
std::string to_csv(const CensusRow& row);

std::string upper_csv(const UpperResult& res);

}  // namespace ttrose
