#include "curvelab/descriptor.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"

namespace curvelab {

std::optional<double> Descriptor::number(std::string_view key) const {
  for (const auto& [k, v] : numbers) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const Descriptor* Descriptor::child(std::string_view key) const {
  for (std::size_t i = 0; i < child_keys.size(); ++i) {
    if (child_keys[i] == key) return &children[i];
  }
  return nullptr;
}

void Descriptor::set_number(const std::string& key, double value) {
  for (auto& [k, v] : numbers) {
    if (k == key) {
      v = value;
      return;
    }
  }
  numbers.emplace_back(key, value);
}

void Descriptor::set_child(const std::string& key, Descriptor value) {
  for (std::size_t i = 0; i < child_keys.size(); ++i) {
    if (child_keys[i] == key) {
      children[i] = std::move(value);
      return;
    }
  }
  child_keys.push_back(key);
  children.push_back(std::move(value));
}

std::string Descriptor::str() const {
  if (numbers.empty() && children.empty()) return name;
  std::string out = name + "(";
  bool first = true;
  for (std::size_t i = 0; i < children.size(); ++i) {
    out += (first ? "" : ",") + child_keys[i] + "=" + children[i].str();
    first = false;
  }
  for (const auto& [k, v] : numbers) {
    out += (first ? "" : ",") + k + "=" + format_number(v);
    first = false;
  }
  return out + ")";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Descriptor parse() {
    Descriptor d = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::InvalidArgument, "bad curve descriptor '" + std::string(text_) +
                                                "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      fail("expected a name");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Descriptor parse_node() {
    Descriptor d;
    d.name = identifier();
    if (!accept('(')) return d;
    if (accept(')')) return d;
    do {
      const std::string key = identifier();
      if (!accept('=')) fail("expected '='");
      skip_space();
      if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                  text_[pos_] == '-' || text_[pos_] == '+' || text_[pos_] == '.')) {
        d.set_number(key, number());
      } else {
        d.set_child(key, parse_node());
      }
    } while (accept(','));
    if (!accept(')')) fail("expected ')'");
    return d;
  }

  double number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (*begin == '+') ++begin;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || !std::isfinite(v)) fail("bad number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Descriptor parse_descriptor(std::string_view text) { return Parser(text).parse(); }

}  // namespace curvelab
