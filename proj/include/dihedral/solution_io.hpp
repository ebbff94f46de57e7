#pragma once

// Solution persistence: UTF-8 key=value lines with '#' comments, one block
// per record, written atomically (temp + rename). Round-trips losslessly
// (doubles printed with 17 significant digits).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dihedral/dccw.hpp"
#include "dihedral/solver.hpp"
#include "dihedral/version.hpp"

namespace dihedral::io {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One record in the solution-file format. Derived quantities are stored for
// the reader's convenience: rho for de, b for dks, growth rates for dccw.
inline std::string serialize(const SolutionRecord& rec) {
  std::string s;
  s += "family = " + std::string(to_string(rec.family)) + "\n";
  s += "alpha = " + fmt(rec.alpha) + "\n";
  if (rec.family == Family::dks) s += "tau = " + fmt(rec.tau_im) + "\n";
  s += "a = " + fmt(rec.params[0]) + "\n";
  if (rec.family == Family::dks) {
    s += "c = " + fmt(rec.params[1]) + "\n";
    const double b =
        rec.params[0] * (1.0 - rec.alpha) + 0.5 * rec.alpha;
    s += "b_derived = " + fmt(b) + "\n";
  } else {
    s += "b = " + fmt(rec.params[1]) + "\n";
  }
  if (rec.family == Family::dccw) {
    const double c = rec.params[1] * rec.params[1] / rec.params[0];
    s += "c = " + fmt(c) + "\n";
    const dccw::Params p{rec.params[0], rec.params[1], c, rec.alpha};
    s += "growth_rate_a = " + fmt(dccw::growth_rate(p, dccw::Puncture::a)) +
         "\n";
    s += "growth_rate_c = " + fmt(dccw::growth_rate(p, dccw::Puncture::c)) +
         "\n";
  }
  if (rec.family == Family::de) s += "rho = " + fmt(rec.rho) + "\n";
  s += "residual_norm = " + fmt(rec.residual_norm) + "\n";
  s += "iterations = " + std::to_string(rec.iterations) + "\n";
  s += std::string("solved = ") + (rec.solved ? "true" : "false") + "\n";
  s += "version = " + std::string(kVersion) + "\n";
  return s;
}

inline std::string serialize_branch(const std::vector<SolutionRecord>& recs) {
  std::string s = "# dihedral-forge solution file\n";
  for (std::size_t i = 0; i < recs.size(); ++i) {
    s += "record = " + std::to_string(i) + "\n";
    s += serialize(recs[i]);
    if (i + 1 < recs.size()) s += "\n";
  }
  return s;
}

inline void write_atomic(const std::filesystem::path& target,
                         const std::string& payload) {
  namespace fs = std::filesystem;
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out)
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << payload;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

inline void write_solutions(const std::vector<SolutionRecord>& recs,
                            const std::filesystem::path& path) {
  write_atomic(path, serialize_branch(recs));
}

inline std::vector<SolutionRecord> parse_solutions(std::istream& in) {
  std::vector<SolutionRecord> out;
  SolutionRecord cur;
  bool have = false;
  std::string line;
  auto flush = [&] {
    if (have) out.push_back(cur);
    cur = SolutionRecord{};
    have = false;
  };
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{}
                                    : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "record") {
      flush();
      have = true;
    } else if (key == "family") {
      const auto f = family_from_string(val);
      if (!f) throw std::runtime_error("solution file: unknown family " + val);
      cur.family = *f;
      have = true;
    } else if (key == "alpha") {
      cur.alpha = std::stod(val);
    } else if (key == "tau") {
      cur.tau_im = std::stod(val);
    } else if (key == "a") {
      cur.params[0] = std::stod(val);
    } else if (key == "b" || key == "c") {
      if (key == "b" || cur.family == Family::dks)
        cur.params[1] = std::stod(val);
      // dccw's redundant c line is derived; ignored on read
    } else if (key == "rho") {
      cur.rho = std::stod(val);
    } else if (key == "residual_norm") {
      cur.residual_norm = std::stod(val);
    } else if (key == "iterations") {
      cur.iterations = std::stoi(val);
    } else if (key == "solved") {
      cur.solved = val == "true";
    }
    // version, b_derived, growth_rate_*: informational
  }
  flush();
  return out;
}

inline std::vector<SolutionRecord> read_solutions(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_solutions(in);
}

}  // namespace dihedral::io
