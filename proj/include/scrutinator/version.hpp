#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "scrutinator/digest.hpp"
#include "scrutinator/errors.hpp"

namespace scrut {

inline constexpr std::string_view kToolVersion = "scrutinator 1.0.0";

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw InputError("I/O error reading '" + path + "'");
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("I/O error writing '" + path + "'");
}

// Reproducibility audit trail: every output document names the tool version
// and the sha256 of each input file it was derived from.
inline std::string file_digest(const std::string& path) {
  return "sha256:" + sha256_hex(read_file(path));
}

}  // namespace scrut
