#pragma once

// Minimal RFC 4180 CSV: fields containing a comma, quote or newline are quoted.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppicod::csv {

using Row = std::vector<std::string>;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_row(std::ostream& out, const Row& fields);

/// Next record, or nullopt at end of input. Skips blank lines.
std::optional<Row> read_row(std::istream& in);

/// Reads the header and checks it equals `expected`; throws FormatError otherwise.
void expect_header(std::istream& in, const Row& expected);

}  // namespace ppicod::csv
