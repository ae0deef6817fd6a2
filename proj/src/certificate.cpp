#include "tiltlab/certificate.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tiltlab::certificate {

namespace {

nlohmann::json encode_double(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

nlohmann::json encode_map(const std::map<std::string, double>& m) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : m) out[k] = encode_double(v);
  return out;
}

}  // namespace

std::string to_json(const Certificate& c) {
  nlohmann::json j;
  j["kind"] = c.kind;
  j["verdict"] = c.pass ? "pass" : "fail";
  j["margin"] = encode_double(c.margin);
  j["constants"] = encode_map(c.constants);
  j["witness"] = encode_map(c.witness);
  j["sweep"]["slacks"] = encode_map(c.slacks);
  j["sweep"]["notes"] = c.notes;
  j["sweep"]["meta"] = c.meta;
  return j.dump(2) + "\n";
}

void write_json(const Certificate& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(c);
}

}  // namespace tiltlab::certificate
