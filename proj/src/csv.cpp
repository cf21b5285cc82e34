#include "factorlab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "factorlab/errors.hpp"

namespace factorlab::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Table read_file(const std::string& path, const std::vector<std::string>& expected_header) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);

    Table t;
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty file: " + path);
    t.header = split_line(line);
    if (t.header != expected_header) {
        std::string found;
        for (std::size_t i = 0; i < expected_header.size(); ++i) {
            if (i >= t.header.size() || t.header[i] != expected_header[i]) {
                found = "expected column '" + expected_header[i] + "' at position " +
                        std::to_string(i + 1) +
                        (i < t.header.size() ? ", found '" + t.header[i] + "'"
                                             : ", found end of header");
                break;
            }
        }
        if (found.empty()) found = "extra trailing columns";
        throw InputError("schema mismatch in " + path + ": " + found);
    }

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto fields = split_line(line);
        if (fields.size() != expected_header.size()) {
            throw InputError("schema mismatch in " + path + " line " +
                             std::to_string(lineno) + ": expected " +
                             std::to_string(expected_header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        t.rows.push_back(std::move(fields));
    }
    return t;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw InputError("malformed number '" + s + "' in " + context);
    }
    return v;
}

Writer::Writer(const std::string& path) : path_(path) {
    out_ = std::fopen(path.c_str(), "wb");
    if (!out_) throw InputError("cannot open file for writing: " + path);
}

Writer::~Writer() {
    if (out_) std::fclose(static_cast<std::FILE*>(out_));
}

void Writer::row(const std::vector<std::string>& fields) {
    auto* f = static_cast<std::FILE*>(out_);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) std::fputc(',', f);
        std::fwrite(fields[i].data(), 1, fields[i].size(), f);
    }
    std::fputc('\n', f);
}

}  // namespace factorlab::csv
