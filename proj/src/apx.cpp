#include "finarg/apx.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace finarg {

ArgumentId ApxDocument::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<ArgumentId>(i);
  throw InputError("unknown argument '" + std::string(name) + "'");
}

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view t) : text_(t) {}

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }
  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  std::string name() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("line " + std::to_string(line_) + ": " + what);
  }
  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

ApxDocument parse_apx(std::string_view text) {
  Lexer lex(text);
  std::vector<std::string> names;
  std::unordered_map<std::string, ArgumentId> index;
  std::vector<Attack> attacks;
  while (!lex.done()) {
    const std::size_t line = lex.line();
    const std::string kw = lex.name();
    lex.expect('(');
    if (kw == "arg") {
      const std::string n = lex.name();
      if (index.count(n)) lex.fail("duplicate argument '" + n + "'");
      index.emplace(n, static_cast<ArgumentId>(names.size()));
      names.push_back(n);
    } else if (kw == "att") {
      const std::string a = lex.name();
      lex.expect(',');
      const std::string b = lex.name();
      for (const auto* n : {&a, &b})
        if (!index.count(*n))
          throw InputError("line " + std::to_string(line) + ": undeclared argument '" + *n + "'");
      attacks.push_back({index[a], index[b]});
    } else {
      throw InputError("line " + std::to_string(line) + ": unknown statement '" + kw + "'");
    }
    lex.expect(')');
    lex.expect('.');
  }
  return {FiniteAF(names.size(), std::move(attacks)), std::move(names)};
}

std::string emit_apx(const ApxDocument& doc, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "% " + c + "\n";
  for (const auto& n : doc.names) out += "arg(" + n + ").\n";
  std::vector<Attack> att = doc.af.attacks();
  std::sort(att.begin(), att.end(),
            [](const Attack& x, const Attack& y) { return std::pair(x.attacker, x.target) < std::pair(y.attacker, y.target); });
  for (const auto& a : att) out += "att(" + doc.names[a.attacker] + "," + doc.names[a.target] + ").\n";
  return out;
}

ApxDocument with_default_names(FiniteAF af) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < af.size(); ++i) names.push_back("a" + std::to_string(i));
  return {std::move(af), std::move(names)};
}

}  // namespace finarg
