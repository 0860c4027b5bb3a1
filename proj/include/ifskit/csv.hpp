#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ifskit {

// Shortest representation that round-trips a double exactly; snprintf with
// the C numeric conventions keeps output byte-identical across runs and
// platforms regardless of any global iostream state.
inline std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace detail {

inline std::string csv_cell(const std::string& value) { return value; }
inline std::string csv_cell(const char* value) { return value; }
inline std::string csv_cell(double value) { return format_double(value); }

template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
std::string csv_cell(T value) {
    return std::to_string(value);
}

}  // namespace detail

// Comma-separated output with "#"-prefixed metadata lines. Callers record
// the complete parameter set (seed included) before the header so every
// emitted file is self-describing and reproducible.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : path_(path), out_(path) {
        if (!out_) {
            throw std::runtime_error("cannot open output file: " + path);
        }
    }

    template <class T>
    void metadata(const std::string& key, const T& value) {
        out_ << "# " << key << " = " << detail::csv_cell(value) << "\n";
    }

    void header(const std::vector<std::string>& columns) { write_line(columns); }

    template <class... Ts>
    void row(const Ts&... fields) {
        write_line({detail::csv_cell(fields)...});
    }

    const std::string& path() const { return path_; }

    void close() { out_.close(); }

private:
    void write_line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out_ << ',';
            }
            out_ << cells[i];
        }
        out_ << "\n";
    }

    std::string path_;
    std::ofstream out_;
};

}  // namespace ifskit
