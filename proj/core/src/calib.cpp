#include <fstream>
#include <map>
#include <sstream>

#include "stereopipe/io.hpp"

namespace stereopipe::io {

CalibInfo parse_middlebury_calib(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw IoError("calib line " + std::to_string(lineno) + ": expected key=value");
    }
    auto key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    kv[key] = line.substr(eq + 1);
  }

  auto get_int = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw IoError(std::string("calib: missing ") + key);
    try {
      std::size_t used = 0;
      const int v = std::stoi(it->second, &used);
      if (it->second.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(key);
      }
      return v;
    } catch (const std::exception&) {
      throw IoError(std::string("calib: malformed ") + key + " '" + it->second + "'");
    }
  };

  CalibInfo info;
  info.ndisp = get_int("ndisp");
  info.width = get_int("width");
  info.height = get_int("height");
  return info;
}

CalibInfo read_middlebury_calib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_middlebury_calib(ss.str());
}

}  // namespace stereopipe::io
