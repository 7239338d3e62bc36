#pragma once
// Plain-text numeric series: values split on whitespace and commas.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "core.hpp"

namespace ctmatch {

namespace detail {

inline bool series_separator(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',';
}

}  // namespace detail

// Accepts integers and decimals in any mix; order preserved.  The first
// malformed token aborts the parse with its line, column and ordinal.
inline std::vector<Value> parse_series(std::string_view text,
                                       std::string_view origin = "<input>") {
  std::vector<Value> out;
  std::size_t line = 1, col = 1, token = 0, i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (detail::series_separator(c)) {
      ++col;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !detail::series_separator(text[j])) ++j;
    const std::string_view tok = text.substr(i, j - i);
    ++token;
    double v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() ||
        !std::isfinite(v)) {
      std::ostringstream msg;
      msg << origin << ':' << line << ':' << col << ": malformed token '" << tok
          << "' (token " << token << ")";
      throw input_error(msg.str());
    }
    out.push_back(v);
    col += j - i;
    i = j;
  }
  return out;
}

inline std::vector<Value> read_series_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_series(buf.str(), path);
}

}  // namespace ctmatch
