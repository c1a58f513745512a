#include "hgs/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hgs {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void skip_ws() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
};

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("toml: " + msg);
}

nlohmann::json parse_value(Cursor& c);

nlohmann::json parse_array(Cursor& c) {
  nlohmann::json arr = nlohmann::json::array();
  ++c.i;  // '['
  while (true) {
    c.skip_ws();
    if (c.done()) fail("unterminated array");
    if (c.peek() == ']') {
      ++c.i;
      return arr;
    }
    arr.push_back(parse_value(c));
    c.skip_ws();
    if (!c.done() && c.peek() == ',') {
      ++c.i;
      continue;
    }
    if (!c.done() && c.peek() == ']') {
      ++c.i;
      return arr;
    }
    fail("expected ',' or ']' in array");
  }
}

nlohmann::json parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) fail("missing value");
  const char ch = c.peek();
  if (ch == '[') return parse_array(c);
  if (ch == '"') {
    ++c.i;
    std::string out;
    while (!c.done() && c.peek() != '"') {
      if (c.peek() == '\\') {
        ++c.i;
        if (c.done()) fail("bad escape");
        const char e = c.peek();
        if (e == 'n') out += '\n';
        else if (e == 't') out += '\t';
        else out += e;
      } else {
        out += c.peek();
      }
      ++c.i;
    }
    if (c.done()) fail("unterminated string");
    ++c.i;
    return out;
  }
  // bare token: bool or number
  std::string tok;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '#' &&
         c.peek() != ' ' && c.peek() != '\t')
    tok += c.s[c.i++];
  if (tok == "true") return true;
  if (tok == "false") return false;
  if (tok.empty()) fail("empty value");
  try {
    std::size_t used = 0;
    if (tok.find_first_of(".eE") == std::string::npos &&
        tok.find("inf") == std::string::npos &&
        tok.find("nan") == std::string::npos) {
      const long long v = std::stoll(tok, &used);
      if (used == tok.size()) return v;
    }
    const double d = std::stod(tok, &used);
    if (used == tok.size()) return d;
  } catch (...) {
  }
  fail("cannot parse value '" + tok + "'");
}

bool key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

}  // namespace

nlohmann::json toml_parse(const std::string& text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comment (crudely: '#' outside strings)
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        line.resize(i);
        break;
      }
    }
    Cursor c{line, 0};
    c.skip_ws();
    if (c.done()) continue;
    if (c.peek() == '[') {
      ++c.i;
      std::string name;
      while (!c.done() && c.peek() != ']') name += c.s[c.i++];
      if (c.done()) fail("unterminated table header");
      ++c.i;
      c.skip_ws();
      if (!c.done()) fail("junk after table header");
      if (name.empty()) fail("empty table name");
      table = &root[name];
      if (table->is_null()) *table = nlohmann::json::object();
      continue;
    }
    std::string key;
    while (!c.done() && key_char(c.peek())) key += c.s[c.i++];
    if (key.empty()) fail("expected key (line " + std::to_string(lineno) + ")");
    c.skip_ws();
    if (c.done() || c.peek() != '=') fail("expected '=' after key " + key);
    ++c.i;
    nlohmann::json v = parse_value(c);
    c.skip_ws();
    if (!c.done()) fail("junk after value for key " + key);
    (*table)[key] = std::move(v);
  }
  return root;
}

nlohmann::json config_load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return nlohmann::json::parse(text);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
    return toml_parse(text);
  // sniff: JSON starts with '{'
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') return nlohmann::json::parse(text);
    break;
  }
  return toml_parse(text);
}

}  // namespace hgs
