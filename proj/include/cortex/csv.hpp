#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cortex::csv {

using Row = std::vector<std::string>;

/// Quotes a field only when it holds a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// One record terminated by CRLF.
std::string format_row(const Row& fields);

/// RFC 4180 reader. Accepts CRLF or bare LF record endings; a trailing line
/// break does not create an empty record. Throws ParseError on a stray quote.
std::vector<Row> parse(std::string_view text);

}  // namespace cortex::csv
