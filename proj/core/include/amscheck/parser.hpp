#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "amscheck/ast.hpp"
#include "amscheck/errors.hpp"
#include "amscheck/interval.hpp"

namespace amscheck {

class ParseError : public Error {
 public:
  enum class Kind {
    Syntax,
    Bound,           // b < a or a negative bound
    RecurrenceZero,  // [*0]
    Unsupported,     // parsed but not evaluable, e.g. local-variable assignment
  };

  ParseError(Kind kind, SourcePos pos, const std::string& message);

  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  Kind kind_;
  SourcePos pos_;
};

struct ParseOptions {
  // Half-width of the band that analog `==` desugars into.
  double value_tol = kDefaultValueTol;
};

/// Parses one property body, e.g. `{V(a)>1.6}[*0.0023] |-> {V(b)>1.1}`.
/// The result is validated.
Property parse_property(std::string_view text, const ParseOptions& opts = {});

/// Parses an assertion file: `property NAME{}; BODY; endproperty` blocks,
/// `label: BODY;` and bare `BODY;` statements, `assert property (NAME);`
/// lines (ignored) and `#` comments. A `##` is always a delay, never a comment.
/// Unnamed assertions are called assertion_1, assertion_2, ...
std::vector<Property> parse_assertion_file(std::string_view text, const ParseOptions& opts = {});

}  // namespace amscheck
