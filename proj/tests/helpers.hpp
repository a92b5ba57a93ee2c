#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string read_fixture(const std::string& name) {
  const std::string path = std::string(IRFEED_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}
