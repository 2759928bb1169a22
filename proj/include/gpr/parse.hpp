#ifndef GPR_PARSE_HPP
#define GPR_PARSE_HPP

#include <string>
#include <string_view>

#include "gpr/ratfun.hpp"

namespace gpr {

class SyntaxErrorAt : public Error {
public:
    SyntaxErrorAt(size_t position, const std::string& expected, const std::string& message)
        : Error(ErrorCode::SyntaxError,
                message + " at position " + std::to_string(position) + " (expected " + expected +
                    ")"),
          position(position),
          expected(expected) {}

    size_t position;
    std::string expected;
};

/// Parses the rational-expression grammar over the variable `s`: complex
/// literals `a+bi`, operators + - * / ^ and parentheses. Input starting with
/// `{` is read as the structured JSON form {gain, zeros, poles}.
RationalFunction parse_expression(std::string_view text,
                                  const Tolerances& tol = default_tolerances());

/// Renders a function in the grammar accepted by parse_expression; parsing the
/// output reproduces the function under the equality predicate.
std::string print_expression(const RationalFunction& f);

std::string format_complex(Cpx value);
std::string format_real(double value);

}  // namespace gpr

#endif
