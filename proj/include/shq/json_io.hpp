#pragma once

#include "shq/eigencurve.hpp"

#include <json.hpp>

namespace shq {

using json = nlohmann::json;

json to_json(const Rational& x);          // "a/b" string
json to_json(const CycloElem& x);         // {"order": m, "coords": ["a/b", ...]}
json to_json(const Poly& f);              // {"order": m, "coeffs": [coords...]}
json to_json(const QSeries& f);           // spec format
QSeries qseries_from_json(const json& j);

json to_json(const ModularFormSpace& sp);  // cache format (with regeneration data)
ModularFormSpace space_from_json(const json& j);

json to_json(const EigenSystem& sys);
json to_json(const LiftRecord& rec);
json to_json(const ScanReport& report);
std::string scan_report_csv(const ScanReport& report);

// atomic write: temp file in the same directory, then rename
void write_file_atomic(const std::string& path, const std::string& content);

// versioned space cache
inline constexpr const char* kCacheVersion = "shq-cache-1";
bool cache_load_space(const std::string& dir, const std::string& key, ModularFormSpace& out);
void cache_store_space(const std::string& dir, const ModularFormSpace& sp);

}  // namespace shq
