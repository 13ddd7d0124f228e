#pragma once

// Reader for the line-oriented basis file format:
//
//   # comment
//   space level=52 weight=2 group=g0 char=none trunc=600 coeffring=int
//   a_1,a_2,...,a_B
//
// weight may be a comma list for direct sums of weights, in which case every
// row starts with "<k>:" naming the weight of that basis row. With
// coeffring=nf:c0,...,1 a coefficient is an integer or "(c0 c1 ...)".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfpm/number_field.hpp"
#include "mfpm/qexp.hpp"

namespace mfpm {

struct SpaceHeader {
  int64_t level = 0;
  std::vector<int64_t> weights;
  Group group = Group::Gamma0;
  std::string char_spec = "none";
  int64_t truncation = 0;
  std::string coeffring = "int";

  bool integral() const { return coeffring == "int"; }
  std::string to_string() const;
};

struct SpaceRow {
  int line = 0;
  int64_t weight = 0;
  std::vector<std::string> tokens;
  std::vector<int> columns;
};

struct SpaceFile {
  std::string name;
  SpaceHeader header;
  std::vector<std::string> comments;
  std::vector<SpaceRow> rows;
  std::optional<DirichletCharacter> character;
  NfPtr field;  // set for nf coefficient rings
  // Digest of the file contents (hex SHA-256).
  std::string digest;

  std::vector<IntQExpansion> integer_rows() const;
  std::vector<NfQExpansion> nf_rows() const;
};

// Throws ParseError with line and column on syntax errors, InputError when the
// file cannot be read.
SpaceFile parse_space_text(const std::string& text, const std::string& name = "<input>");
SpaceFile read_space_file(const std::string& path);

std::string sha256_hex(const std::string& data);

}  // namespace mfpm
