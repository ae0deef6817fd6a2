#pragma once

#include <map>
#include <string>
#include <vector>

namespace tiltlab::certificate {

// Outcome of one inequality sweep: the constants tried, the worst margin
// (min over samples of RHS - LHS reoriented so negative means violation),
// the sample achieving it, and the slacks that were granted.
struct Certificate {
  std::string kind;
  std::map<std::string, double> constants;
  bool pass = false;
  double margin = 0.0;
  std::map<std::string, double> witness;
  std::map<std::string, double> slacks;
  std::vector<std::string> notes;
  std::map<std::string, std::string> meta;
};

std::string to_json(const Certificate& c);
void write_json(const Certificate& c, const std::string& path);

}  // namespace tiltlab::certificate
