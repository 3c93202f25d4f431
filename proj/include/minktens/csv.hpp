#pragma once

#include "minktens/common.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace minktens {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hashHex(const std::string& s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

inline std::string formatReal(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// CSV writer; every file carries comment rows with the config hash and seed
// so a run can be reproduced from its output alone.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& text) { os_ << "# " << text << "\n"; }

  void manifest(const std::string& configText, std::uint64_t seed) {
    comment("config_hash=" + hashHex(configText));
    comment("seed=" + std::to_string(seed));
    comment(std::string("version=") + kVersion);
  }

  void header(const std::vector<std::string>& cols) { writeRow(cols); }

  void row(const std::vector<std::string>& cells) { writeRow(cells); }

 private:
  void writeRow(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << "\n";
  }

  std::ostream& os_;
};

inline void writeManifestFile(const std::string& outPath, const std::string& subcommand,
                              const std::string& configText, std::uint64_t seed) {
  std::ofstream m(outPath + ".manifest");
  if (!m) throw std::runtime_error("cannot write manifest next to " + outPath);
  m << "subcommand=" << subcommand << "\n";
  m << "config_hash=" << hashHex(configText) << "\n";
  m << "seed=" << seed << "\n";
  m << "version=" << kVersion << "\n";
  m << "config:\n" << configText;
}

}  // namespace minktens
