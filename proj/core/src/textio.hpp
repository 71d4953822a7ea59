#pragma once

// Line-based document format shared by scenario, solution and experiment
// files:
//
//   format_version = 1
//   kind = scenario
//   [section]
//   key = value            setting
//   tag key=value ...      record
//   [end]
//
// '#' starts a comment. Every reader consumes fields explicitly; leftovers
// are reported as unknown fields.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fleet/model.hpp"

namespace fleet::textio {

inline constexpr int kFormatVersion = 1;

struct Field {
    std::string key;
    std::string value;
    int line = 0;
};

struct Record {
    std::string tag;
    std::vector<Field> fields;
    int line = 0;
};

struct Section {
    std::string name;
    int line = 0;
    std::vector<Field> settings;
    std::vector<Record> records;
};

struct Document {
    std::string source;
    std::vector<Field> header;
    std::vector<Section> sections;
    int last_line = 0;
    bool ended = false;
};

/// Throws ParseError on malformed lines. A missing [end] is reported by check_sections.
Document parse(std::istream& is, const std::string& source);

/// Checks format_version and kind in the header.
void expect_kind(const Document& doc, const std::string& kind);

/// Throws ParseError "missing section [name]".
const Section& require_section(const Document& doc, const std::string& name);
const Section* find_section(const Document& doc, const std::string& name);

/// Rejects sections outside `allowed`, a missing `required` one, then a missing [end].
void check_sections(const Document& doc, const std::vector<std::string>& allowed,
                    const std::vector<std::string>& required);

/// Consumes named fields from a list and reports the rest as unknown.
class FieldReader {
public:
    FieldReader(const std::string& source, const std::vector<Field>& fields, int line, std::string where);

    bool has(const std::string& key) const;
    std::string text(const std::string& key);
    std::optional<std::string> optional_text(const std::string& key);
    std::uint64_t unsigned_int(const std::string& key);
    Rational rational(const std::string& key);
    double real(const std::string& key);
    bool boolean(const std::string& key);
    LabelSet labels(const std::string& key);
    std::vector<std::string> list(const std::string& key);

    [[noreturn]] void fail(const std::string& key, const std::string& message) const;
    /// Throws on any field that was not consumed.
    void finish() const;

private:
    const Field* find(const std::string& key) const;
    const Field& need(const std::string& key);

    std::string source_;
    const std::vector<Field>* fields_;
    std::vector<char> used_;
    int line_;
    std::string where_;
};

std::string join(const std::vector<std::string>& items, char sep = ',');
std::string format_labels(const LabelSet& labels);
/// Names and other free-form values may not contain whitespace, '=', ',' or '#'.
void check_token(const std::string& value, const std::string& what);

void write_header(std::ostream& os, const std::string& kind);

}  // namespace fleet::textio
