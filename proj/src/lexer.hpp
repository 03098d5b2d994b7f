#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "slicefi/error.hpp"
#include "slicefi/ir.hpp"

namespace slicefi::detail {

enum class Tok {
  End,
  Ident,
  Number,
  Keyword,
  Punct,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
  // Number payload
  Word value = 0;
  unsigned width = 0;
  bool sized = false;
};

/// Splits MiniRTL source into tokens. Throws Error(SyntaxError) on malformed
/// literals or stray characters.
std::vector<Token> tokenize(std::string_view source);

}  // namespace slicefi::detail
