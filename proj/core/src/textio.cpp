#include "textio.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fleet/errors.hpp"

namespace fleet::textio {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

}  // namespace

Document parse(std::istream& is, const std::string& source) {
    Document doc;
    doc.source = source;
    std::string raw;
    int line_no = 0;
    bool ended = false;
    while (std::getline(is, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (ended) {
            throw ParseError(source, line_no, "content after [end]");
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError(source, line_no, "malformed section header '" + line + "'");
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name == "end") {
                ended = true;
                continue;
            }
            for (const Section& s : doc.sections) {
                if (s.name == name) {
                    throw ParseError(source, line_no, "duplicate section [" + name + "]");
                }
            }
            doc.sections.push_back(Section{name, line_no, {}, {}});
            continue;
        }

        const auto eq = line.find('=');
        const auto space = line.find_first_of(" \t");
        const bool setting = eq != std::string::npos && (space == std::string::npos || eq < space ||
                                                         trim(line.substr(space, eq - space)).empty());
        if (setting) {
            Field f{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
            if (f.key.empty()) {
                throw ParseError(source, line_no, "setting without a key");
            }
            auto& target = doc.sections.empty() ? doc.header : doc.sections.back().settings;
            for (const Field& other : target) {
                if (other.key == f.key) {
                    throw ParseError(source, line_no, "duplicate field '" + f.key + "'");
                }
            }
            target.push_back(std::move(f));
            continue;
        }

        if (doc.sections.empty()) {
            throw ParseError(source, line_no, "record outside of any section");
        }
        std::istringstream tokens(line);
        Record rec;
        rec.line = line_no;
        tokens >> rec.tag;
        for (std::string tok; tokens >> tok;) {
            const auto at = tok.find('=');
            if (at == std::string::npos || at == 0) {
                throw ParseError(source, line_no, "expected key=value, got '" + tok + "'");
            }
            Field f{tok.substr(0, at), tok.substr(at + 1), line_no};
            for (const Field& other : rec.fields) {
                if (other.key == f.key) {
                    throw ParseError(source, line_no, "duplicate field '" + f.key + "'");
                }
            }
            rec.fields.push_back(std::move(f));
        }
        doc.sections.back().records.push_back(std::move(rec));
    }
    doc.last_line = line_no;
    doc.ended = ended;
    return doc;
}

void expect_kind(const Document& doc, const std::string& kind) {
    FieldReader header(doc.source, doc.header, 1, "header");
    if (!header.has("format_version")) {
        throw ParseError(doc.source, 1, "missing field 'format_version'");
    }
    const auto version = header.unsigned_int("format_version");
    if (version != static_cast<std::uint64_t>(kFormatVersion)) {
        header.fail("format_version", "unsupported version " + std::to_string(version));
    }
    const std::string actual = header.text("kind");
    if (actual != kind) {
        header.fail("kind", "expected '" + kind + "', found '" + actual + "'");
    }
    header.finish();
}

const Section* find_section(const Document& doc, const std::string& name) {
    for (const Section& s : doc.sections) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

const Section& require_section(const Document& doc, const std::string& name) {
    if (const Section* s = find_section(doc, name)) {
        return *s;
    }
    throw ParseError(doc.source, doc.last_line,
                     "missing section [" + name + "]" + (doc.ended ? "" : " (truncated file?)"));
}

void check_sections(const Document& doc, const std::vector<std::string>& allowed,
                    const std::vector<std::string>& required) {
    for (const Section& s : doc.sections) {
        if (std::find(allowed.begin(), allowed.end(), s.name) == allowed.end()) {
            throw ParseError(doc.source, s.line, "unknown section [" + s.name + "]");
        }
    }
    for (const std::string& name : required) {
        require_section(doc, name);
    }
    if (!doc.ended) {
        throw ParseError(doc.source, doc.last_line, "missing section [end] (truncated file?)");
    }
}

FieldReader::FieldReader(const std::string& source, const std::vector<Field>& fields, int line, std::string where)
    : source_(source), fields_(&fields), used_(fields.size(), 0), line_(line), where_(std::move(where)) {}

const Field* FieldReader::find(const std::string& key) const {
    for (const Field& f : *fields_) {
        if (f.key == key) {
            return &f;
        }
    }
    return nullptr;
}

const Field& FieldReader::need(const std::string& key) {
    for (std::size_t i = 0; i < fields_->size(); ++i) {
        if ((*fields_)[i].key == key) {
            used_[i] = 1;
            return (*fields_)[i];
        }
    }
    throw ParseError(source_, line_, where_ + ": missing field '" + key + "'");
}

void FieldReader::fail(const std::string& key, const std::string& message) const {
    const Field* f = find(key);
    throw ParseError(source_, f ? f->line : line_, where_ + ": field '" + key + "': " + message);
}

bool FieldReader::has(const std::string& key) const { return find(key) != nullptr; }

std::string FieldReader::text(const std::string& key) { return need(key).value; }

std::optional<std::string> FieldReader::optional_text(const std::string& key) {
    if (!has(key)) {
        return std::nullopt;
    }
    return text(key);
}

std::uint64_t FieldReader::unsigned_int(const std::string& key) {
    const std::string& v = need(key).value;
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        fail(key, "expected a non-negative integer, got '" + v + "'");
    }
    return out;
}

Rational FieldReader::rational(const std::string& key) {
    const std::string& v = need(key).value;
    try {
        return Rational::parse(v);
    } catch (const std::exception&) {
        fail(key, "expected a number, got '" + v + "'");
    }
}

double FieldReader::real(const std::string& key) {
    const std::string& v = need(key).value;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        fail(key, "expected a real number, got '" + v + "'");
    }
    return out;
}

bool FieldReader::boolean(const std::string& key) {
    const std::string& v = need(key).value;
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    fail(key, "expected true or false, got '" + v + "'");
}

LabelSet FieldReader::labels(const std::string& key) {
    LabelSet out;
    for (const std::string& item : list(key)) {
        unsigned label = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), label);
        if (ec != std::errc{} || ptr != item.data() + item.size() || label >= LabelSet::kMaxLabels) {
            fail(key, "bad label '" + item + "'");
        }
        out.insert(label);
    }
    return out;
}

std::vector<std::string> FieldReader::list(const std::string& key) {
    const std::string& v = need(key).value;
    if (v == "-" || v.empty()) {
        return {};
    }
    std::vector<std::string> items = split(v, ',');
    for (const std::string& item : items) {
        if (item.empty()) {
            fail(key, "empty list item in '" + v + "'");
        }
    }
    return items;
}

void FieldReader::finish() const {
    for (std::size_t i = 0; i < fields_->size(); ++i) {
        if (!used_[i]) {
            const Field& f = (*fields_)[i];
            throw ParseError(source_, f.line, where_ + ": unknown field '" + f.key + "'");
        }
    }
}

std::string join(const std::vector<std::string>& items, char sep) {
    if (items.empty()) {
        return "-";
    }
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += items[i];
    }
    return out;
}

std::string format_labels(const LabelSet& labels) {
    std::vector<std::string> items;
    for (unsigned l : labels.labels()) {
        items.push_back(std::to_string(l));
    }
    return join(items);
}

void check_token(const std::string& value, const std::string& what) {
    if (value.empty() || value == "-" || value.find_first_of(" \t\r\n=,#[]") != std::string::npos) {
        throw std::invalid_argument(what + " '" + value + "' must be non-empty without whitespace or =,#[]");
    }
}

void write_header(std::ostream& os, const std::string& kind) {
    os << "format_version = " << kFormatVersion << '\n';
    os << "kind = " << kind << '\n';
}

}  // namespace fleet::textio
