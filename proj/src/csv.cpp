#include "ppicod/csv.hpp"

#include <istream>
#include <ostream>

namespace ppicod::csv {

void write_row(std::ostream& out, const Row& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        const auto& f = fields[i];
        if (f.find_first_of(",\"\n\r") == std::string::npos) {
            out << f;
            continue;
        }
        out << '"';
        for (const char c : f) {
            if (c == '"') {
                out << '"';
            }
            out << c;
        }
        out << '"';
    }
    out << '\n';
}

std::optional<Row> read_row(std::istream& in) {
    Row row;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    char c = 0;
    while (in.get(c)) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            continue;
        } else if (c == '\n') {
            if (row.empty() && field.empty()) {
                any = false;
                continue;  // blank line
            }
            row.push_back(std::move(field));
            return row;
        } else {
            field.push_back(c);
        }
    }
    if (in_quotes) {
        throw FormatError("unterminated quoted CSV field");
    }
    if (!any) {
        return std::nullopt;
    }
    row.push_back(std::move(field));
    return row;
}

void expect_header(std::istream& in, const Row& expected) {
    const auto header = read_row(in);
    if (!header || *header != expected) {
        std::string want;
        for (const auto& f : expected) {
            want += (want.empty() ? "" : ",") + f;
        }
        throw FormatError("unexpected CSV header; expected " + want);
    }
}

}  // namespace ppicod::csv
