#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qharm/harmonic.hpp"
#include "qharm/report.hpp"

namespace qharm {

/// Rounds to 15 significant digits so serialized output is stable and a
/// re-parsed value serializes to the same text.
double round15(double x);

/// {"order": N, "re": [...], "im": [...]}
nlohmann::json to_json(const TruncatedSeries& s);
/// {"q": number | "classical", "h": series, "g": series, "provenance": str}
nlohmann::json to_json(const HarmonicMap& f);
/// {"check", "pass", "extremal": {"value", "at_z"}, "params", "grid", ...}
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const QParam& q);

/// Parsers throw ConfigError("InvalidJson") on schema violations.
TruncatedSeries series_from_json(const nlohmann::json& j);
HarmonicMap map_from_json(const nlohmann::json& j);
QParam qparam_from_json(const nlohmann::json& j);

/// Two-space indented dump with a trailing newline.
std::string dump(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary and renames it over `path`. Throws
/// IoError on failure.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

class IoError : public Error {
 public:
  explicit IoError(const std::string& what)
      : Error(Category::Config, "IoError", what) {}
};

}  // namespace qharm
