#include "lexer.hpp"

#include <array>
#include <cctype>

namespace slicefi::detail {

namespace {

constexpr std::array kKeywords = {
    "module", "endmodule", "input", "output", "wire",  "reg",     "assign",  "always",
    "posedge", "begin",    "end",   "if",     "else",  "case",    "endcase", "default",
};

// Longest first so that maximal munch works with a linear scan.
constexpr std::array kPuncts = {
    "&&", "||", "==", "!=", "<=", ">=", "<<", ">>", "(", ")", "[", "]", "{", "}", ";", ",",
    ":",  "?",  "@",  "=",  "~",  "!",  "&",  "|",  "^", "+", "-", "<", ">",
};

bool is_keyword(std::string_view word) {
  for (auto* k : kKeywords) {
    if (word == k) return true;
  }
  return false;
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          advance();
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = is_keyword(t.text) ? Tok::Keyword : Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
        lex_number(t);
      } else {
        lex_punct(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg, loc);
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        SourceLoc open{line_, col_};
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= src_.size()) fail(open, "unterminated block comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  // Accumulates digits of `base` (underscores allowed) into a 64-bit value.
  Word lex_digits(unsigned base, SourceLoc loc) {
    Word value = 0;
    bool any = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '_') {
        advance();
        continue;
      }
      int d = digit_value(c);
      if (d < 0 || d >= static_cast<int>(base)) break;
      if (value > (~Word{0} - static_cast<Word>(d)) / base) fail(loc, "literal exceeds 64 bits");
      value = value * base + static_cast<Word>(d);
      any = true;
      advance();
    }
    if (!any) fail(loc, "malformed number literal");
    return value;
  }

  void lex_number(Token& t) {
    t.kind = Tok::Number;
    std::size_t start = pos_;
    Word size = 0;
    bool have_size = false;
    if (src_[pos_] != '\'') {
      size = lex_digits(10, t.loc);
      have_size = true;
    }
    if (pos_ < src_.size() && src_[pos_] == '\'') {
      advance();
      if (pos_ >= src_.size()) fail(t.loc, "malformed based literal");
      unsigned base = 0;
      switch (src_[pos_]) {
        case 'b': case 'B': base = 2; break;
        case 'o': case 'O': base = 8; break;
        case 'd': case 'D': base = 10; break;
        case 'h': case 'H': base = 16; break;
        default: fail(t.loc, "unknown literal base");
      }
      advance();
      t.value = lex_digits(base, t.loc);
      if (have_size) {
        if (size == 0 || size > kMaxWidth) fail(t.loc, "literal width must be between 1 and 64");
        t.width = static_cast<unsigned>(size);
        t.sized = true;
        if ((t.value & ~width_mask(t.width)) != 0) fail(t.loc, "literal value does not fit its width");
      }
    } else {
      t.value = size;
    }
    if (!t.sized) {
      unsigned bits = 1;
      while (bits < 64 && (t.value >> bits) != 0) ++bits;
      t.width = bits;
    }
    t.text = std::string(src_.substr(start, pos_ - start));
  }

  void lex_punct(Token& t) {
    for (auto* p : kPuncts) {
      std::string_view pv(p);
      if (src_.substr(pos_, pv.size()) == pv) {
        t.kind = Tok::Punct;
        t.text = std::string(pv);
        for (std::size_t i = 0; i < pv.size(); ++i) advance();
        return;
      }
    }
    fail(t.loc, std::string("unexpected character '") + src_[pos_] + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace slicefi::detail
