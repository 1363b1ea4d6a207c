#ifndef ALOGLAB_PARSER_HPP
#define ALOGLAB_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "aloglab/ast.hpp"

namespace aloglab {

// Parses program text in the .alog syntax. 'card' is normalized to 'count',
// '|' to 'or'. Throws ParseError (with source span) or ValidationError.
Program parse_program(std::string_view text);

// Canonical text form; parse_program(format_program(p)) equals p.
std::string format_program(const Program& p);

// Parses a comma-separated list of ground regular literals, e.g. "p(0),-q(a)".
LiteralSet parse_literal_list(std::string_view text);

}  // namespace aloglab

#endif
