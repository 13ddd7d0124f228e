#include "mfpm/space_file.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mfpm {

namespace {

std::string group_name(Group g) { return g == Group::Gamma0 ? "g0" : "g1"; }

int64_t parse_int(const std::string& s, int line, int col, const std::string& what) {
  try {
    std::size_t used = 0;
    const int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad " + what + " '" + s + "'", line, col);
  }
}

std::vector<int64_t> parse_weights(const std::string& s, int line, int col) {
  std::vector<int64_t> w;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const int64_t k = parse_int(tok, line, col, "weight");
    if (k < 1) throw ParseError("weight must be positive", line, col);
    w.push_back(k);
  }
  if (w.empty()) throw ParseError("empty weight list", line, col);
  std::sort(w.begin(), w.end());
  if (std::adjacent_find(w.begin(), w.end()) != w.end()) {
    throw ParseError("repeated weight", line, col);
  }
  return w;
}

SpaceHeader parse_header(const std::string& text, int line) {
  SpaceHeader h;
  std::size_t pos = 0;
  bool saw_space = false, saw_level = false, saw_weight = false, saw_trunc = false;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string tok = text.substr(start, pos - start);
    const int col = static_cast<int>(start) + 1;
    if (!saw_space) {
      if (tok != "space") throw ParseError("header must start with 'space'", line, col);
      saw_space = true;
      continue;
    }
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("expected key=value, got '" + tok + "'", line, col);
    }
    const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
    const int vcol = col + static_cast<int>(eq) + 1;
    if (key == "level") {
      h.level = parse_int(value, line, vcol, "level");
      if (h.level < 1) throw ParseError("level must be positive", line, vcol);
      saw_level = true;
    } else if (key == "weight") {
      h.weights = parse_weights(value, line, vcol);
      saw_weight = true;
    } else if (key == "group") {
      if (value == "g0") {
        h.group = Group::Gamma0;
      } else if (value == "g1") {
        h.group = Group::Gamma1;
      } else {
        throw ParseError("group must be g0 or g1", line, vcol);
      }
    } else if (key == "char") {
      h.char_spec = value;
    } else if (key == "trunc") {
      h.truncation = parse_int(value, line, vcol, "truncation");
      if (h.truncation < 1) throw ParseError("truncation must be positive", line, vcol);
      saw_trunc = true;
    } else if (key == "coeffring") {
      if (value != "int" && value.rfind("nf:", 0) != 0) {
        throw ParseError("coeffring must be int or nf:<poly>", line, vcol);
      }
      h.coeffring = value;
    } else {
      throw ParseError("unknown header key '" + key + "'", line, col);
    }
  }
  if (!saw_space) throw ParseError("missing header", line, 1);
  if (!saw_level) throw ParseError("header lacks level=", line, 1);
  if (!saw_weight) throw ParseError("header lacks weight=", line, 1);
  if (!saw_trunc) throw ParseError("header lacks trunc=", line, 1);
  return h;
}

void validate_integer_token(const std::string& tok, int line, int col) {
  Integer x;
  if (tok.empty() || x.set_str(tok, 10) != 0) {
    throw ParseError("bad coefficient '" + tok + "'", line, col);
  }
}

}  // namespace

std::string SpaceHeader::to_string() const {
  std::ostringstream out;
  out << "space level=" << level << " weight=";
  for (std::size_t i = 0; i < weights.size(); ++i) out << (i ? "," : "") << weights[i];
  out << " group=" << group_name(group) << " char=" << char_spec << " trunc=" << truncation
      << " coeffring=" << coeffring;
  return out.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

SpaceFile parse_space_text(const std::string& text, const std::string& name) {
  SpaceFile file;
  file.name = name;
  file.digest = sha256_hex(text);
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (raw[first] == '#') {
      file.comments.push_back(raw.substr(first + 1));
      continue;
    }
    if (!have_header) {
      file.header = parse_header(raw, line);
      have_header = true;
      continue;
    }
    SpaceRow row;
    row.line = line;
    std::size_t pos = first;
    const bool multi = file.header.weights.size() > 1;
    const auto colon = raw.find(':', pos);
    if (multi) {
      if (colon == std::string::npos) {
        throw ParseError("direct-sum rows must start with '<weight>:'", line, static_cast<int>(pos) + 1);
      }
      row.weight = parse_int(raw.substr(pos, colon - pos), line, static_cast<int>(pos) + 1, "row weight");
      if (std::find(file.header.weights.begin(), file.header.weights.end(), row.weight) ==
          file.header.weights.end()) {
        throw ParseError("row weight not declared in header", line, static_cast<int>(pos) + 1);
      }
      pos = colon + 1;
    } else {
      row.weight = file.header.weights.front();
    }
    while (true) {
      auto comma = raw.find(',', pos);
      // a parenthesized nf coefficient contains no commas
      std::string tok = raw.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto l = tok.find_first_not_of(" \t");
      const auto r = tok.find_last_not_of(" \t");
      const int col = static_cast<int>(pos + (l == std::string::npos ? 0 : l)) + 1;
      tok = l == std::string::npos ? "" : tok.substr(l, r - l + 1);
      if (file.header.integral()) validate_integer_token(tok, line, col);
      if (tok.empty()) throw ParseError("empty coefficient", line, col);
      row.tokens.push_back(tok);
      row.columns.push_back(col);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int64_t>(row.tokens.size()) != file.header.truncation) {
      throw ParseError("row has " + std::to_string(row.tokens.size()) +
                           " coefficients, header declares trunc=" +
                           std::to_string(file.header.truncation),
                       line, static_cast<int>(first) + 1);
    }
    file.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("missing 'space' header", line + 1, 1);
  if (!file.header.integral()) {
    try {
      file.field = NumberField::parse(file.header.coeffring);
    } catch (const InputError& e) {
      throw ParseError(e.what(), 1, 1);
    }
    for (const auto& row : file.rows) {
      for (std::size_t i = 0; i < row.tokens.size(); ++i) {
        try {
          (void)file.field->parse_element(row.tokens[i]);
        } catch (const InputError& e) {
          throw ParseError(e.what(), row.line, row.columns[i]);
        }
      }
    }
  }
  if (file.header.char_spec != "none" && file.header.char_spec != "trivial") {
    try {
      file.character = DirichletCharacter::parse(file.header.char_spec, file.header.level);
    } catch (const InputError& e) {
      throw InputError(name + ": " + e.what());
    }
  } else {
    file.character = DirichletCharacter::trivial(file.header.level);
  }
  if (file.header.group == Group::Gamma0 && !file.character->is_trivial()) {
    throw InputError(name + ": group=g0 requires the trivial character");
  }
  return file;
}

SpaceFile read_space_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_space_text(buf.str(), path);
}

std::vector<IntQExpansion> SpaceFile::integer_rows() const {
  if (!header.integral()) throw PreconditionError(name + ": coefficients are not integers");
  std::vector<IntQExpansion> out;
  for (const auto& row : rows) {
    std::vector<Integer> c(row.tokens.size() + 1);
    for (std::size_t i = 0; i < row.tokens.size(); ++i) c[i + 1].set_str(row.tokens[i], 10);
    out.emplace_back(std::move(c), header.level, std::vector<int64_t>{row.weight}, character);
  }
  return out;
}

std::vector<NfQExpansion> SpaceFile::nf_rows() const {
  NfPtr f = field ? field : NumberField::create({0, 1});
  std::vector<NfQExpansion> out;
  for (const auto& row : rows) {
    std::vector<NfElement> c{f->zero()};
    for (const auto& t : row.tokens) c.push_back(f->parse_element(t));
    out.emplace_back(std::move(c), header.level, std::vector<int64_t>{row.weight}, character);
  }
  return out;
}

}  // namespace mfpm
