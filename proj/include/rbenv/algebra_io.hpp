#pragma once

// Line-oriented algebra files.
//
//   file    := line*
//   line    := blank | '#' comment | 'dim' N | 'basis' name+
//            | bracket '=' lincomb | product '=' lincomb
//   bracket := name ',' name  |  '[' name ',' name ']'
//   product := name '.' name
//   lincomb := '0' | sign? mono (('+' | '-') mono)*
//   mono    := (rational '*')? name
//
// 'dim' comes first; 'basis' is optional (default e1..eN). Omitted entries
// are zero. A bracket entry for (a,b) also sets (b,a) to its negative unless
// (b,a) is given explicitly; explicit entries are kept as written.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rbenv/postlie.hpp"

namespace rbenv {

class AlgebraFileError : public std::runtime_error {
 public:
  AlgebraFileError(const std::string& source, std::size_t line, const std::string& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

PostLieAlgebra parseAlgebra(std::istream& in, const std::string& source = "<input>");
PostLieAlgebra loadAlgebra(const std::string& path);

/// Writes p in the file format above; parseAlgebra reads it back unchanged.
std::string formatAlgebra(const PostLieAlgebra& p);

}  // namespace rbenv
