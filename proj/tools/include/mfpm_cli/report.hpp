#pragma once

// Plain-text reports: blank-line separated records of "key: value" lines.
// Keys keep their insertion order so output is byte-stable.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mfpm::cli {

class Record {
 public:
  explicit Record(std::string kind) { set("record", std::move(kind)); }

  Record& set(const std::string& key, std::string value);
  Record& set(const std::string& key, long long value) { return set(key, std::to_string(value)); }
  Record& set(const std::string& key, bool value) { return set(key, std::string(value ? "yes" : "no")); }
  Record& set(const std::string& key, const char* value) { return set(key, std::string(value)); }

  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }
  // First value stored under `key`, or empty.
  std::string get(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

class Report {
 public:
  Record& add(const std::string& kind);
  const std::vector<Record>& records() const { return records_; }
  void write(std::ostream& out) const;

 private:
  std::vector<Record> records_;
};

// Reads back what Report::write produced.
std::vector<Record> parse_report(const std::string& text);

}  // namespace mfpm::cli
