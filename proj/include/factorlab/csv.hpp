#pragma once

// Minimal CSV plumbing for the flat-file panel formats: comma-separated,
// UTF-8, LF, no quoting. Doubles are written with shortest round-trip
// formatting so export/ingest cycles reproduce values exactly.

#include <string>
#include <vector>

namespace factorlab::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Reads path, validates the header matches expected_header exactly.
// Throws InputError on a missing file or header mismatch (naming the
// offending column) or on a row with the wrong field count.
Table read_file(const std::string& path, const std::vector<std::string>& expected_header);

std::string format_double(double v);
double parse_double(const std::string& s, const std::string& context);

class Writer {
public:
    explicit Writer(const std::string& path);
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void row(const std::vector<std::string>& fields);

private:
    void* out_;  // FILE*
    std::string path_;
};

}  // namespace factorlab::csv
