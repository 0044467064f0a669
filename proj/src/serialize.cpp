#include "qharm/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qharm {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw ConfigError("InvalidJson", what);
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

json number_array(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

// Rounds every floating value of an already-built document in place.
void round_all(json& j) {
  if (j.is_number_float()) {
    j = number(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& v : j) round_all(v);
  }
}

}  // namespace

double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

json to_json(const QParam& q) {
  if (q.is_classical()) return "classical";
  return number(q.value());
}

json to_json(const TruncatedSeries& s) {
  std::vector<double> re, im;
  re.reserve(s.order() + 1);
  im.reserve(s.order() + 1);
  for (const Complex& c : s.coefficients()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"order", s.order()}, {"re", number_array(re)}, {"im", number_array(im)}};
}

json to_json(const HarmonicMap& f) {
  return {{"q", to_json(f.q())},
          {"h", to_json(f.h())},
          {"g", to_json(f.g())},
          {"provenance", f.provenance()}};
}

json to_json(const VerificationReport& r) {
  json per_radius = json::array();
  for (const RadiusSummary& s : r.per_radius) {
    per_radius.push_back(
        {{"r", number(s.radius)}, {"min", number(s.min)}, {"max", number(s.max)}});
  }
  json out = {{"check", r.check},
              {"pass", r.pass},
              {"extremal",
               {{"value", number(r.extremal.value)},
                {"at_z", {number(r.extremal.at_z.real()),
                          number(r.extremal.at_z.imag())}}}},
              {"params", r.params},
              {"grid", r.grid},
              {"details", r.details},
              {"per_radius", per_radius},
              {"evidence", "numerical sampling, not a proof"}};
  round_all(out);
  return out;
}

QParam qparam_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "classical") return QParam::classical();
    invalid("q must be a number or \"classical\"");
  }
  if (!j.is_number()) invalid("q must be a number or \"classical\"");
  return QParam::of(j.get<double>());
}

TruncatedSeries series_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    invalid("series needs \"re\" and \"im\" arrays");
  }
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty()) {
    invalid("series \"re\" and \"im\" must be non-empty arrays of equal length");
  }
  if (j.contains("order") &&
      (!j.at("order").is_number_unsigned() ||
       j.at("order").get<std::size_t>() + 1 != re.size())) {
    invalid("series \"order\" does not match coefficient count");
  }
  std::vector<Complex> c(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) {
    if (!re[k].is_number() || !im[k].is_number()) {
      invalid("series coefficients must be finite numbers");
    }
    c[k] = {re[k].get<double>(), im[k].get<double>()};
  }
  try {
    return TruncatedSeries(std::move(c));
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
}

HarmonicMap map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("h") || !j.contains("g") ||
      !j.contains("q")) {
    invalid("map needs \"q\", \"h\" and \"g\"");
  }
  std::string prov;
  if (j.contains("provenance") && j.at("provenance").is_string()) {
    prov = j.at("provenance").get<std::string>();
  }
  return HarmonicMap(series_from_json(j.at("h")), series_from_json(j.at("g")),
                     qparam_from_json(j.at("q")), std::move(prov));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    invalid(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw IoError("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

}  // namespace qharm
