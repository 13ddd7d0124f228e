#include "mfpm_cli/report.hpp"

#include <sstream>

namespace mfpm::cli {

Record& Record::set(const std::string& key, std::string value) {
  for (char& c : value) {
    if (c == '\n') c = ' ';
  }
  fields_.emplace_back(key, std::move(value));
  return *this;
}

std::string Record::get(const std::string& key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  return {};
}

Record& Report::add(const std::string& kind) {
  records_.emplace_back(kind);
  return records_.back();
}

void Report::write(std::ostream& out) const {
  bool first = true;
  for (const auto& r : records_) {
    if (!first) out << '\n';
    first = false;
    for (const auto& [k, v] : r.fields()) out << k << ": " << v << '\n';
  }
}

std::vector<Record> parse_report(const std::string& text) {
  std::vector<Record> out;
  std::istringstream in(text);
  std::string line;
  bool open = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      open = false;
      continue;
    }
    const auto colon = line.find(": ");
    const std::string key = colon == std::string::npos ? line : line.substr(0, colon);
    const std::string value = colon == std::string::npos ? "" : line.substr(colon + 2);
    if (!open) {
      out.emplace_back(key == "record" ? value : "");
      open = true;
      if (key == "record") continue;
    }
    out.back().set(key, value);
  }
  return out;
}

}  // namespace mfpm::cli
