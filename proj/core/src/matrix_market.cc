// Copyright 2026 The mubtrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mubtrace/matrix_market.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

namespace mubtrace {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            i++;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            i++;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

double parse_real(std::string_view tok, std::size_t line) {
    double v = 0;
    // from_chars rejects a leading '+', which some writers emit.
    std::string_view body = !tok.empty() && tok.front() == '+' ? tok.substr(1) : tok;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
        throw ParseError(line, "expected a real number, got '" + std::string(tok) + "'");
    }
    return v;
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
    }
    return v;
}

enum class Format { kArray, kCoordinate };
enum class Field { kReal, kPattern };
enum class Symmetry { kGeneral, kSymmetric };

struct Header {
    Format format;
    Field field;
    Symmetry symmetry;
};

Header parse_header(const std::string &line) {
    auto tok = split_ws(line);
    if (tok.size() != 5 || lower(tok[0]) != "%%matrixmarket") {
        throw ParseError(1, "missing '%%MatrixMarket matrix <format> <field> <symmetry>' header");
    }
    if (lower(tok[1]) != "matrix") {
        throw ParseError(1, "unsupported object '" + std::string(tok[1]) + "'");
    }
    Header h{};
    std::string format = lower(tok[2]);
    if (format == "array") {
        h.format = Format::kArray;
    } else if (format == "coordinate") {
        h.format = Format::kCoordinate;
    } else {
        throw ParseError(1, "unsupported format '" + std::string(tok[2]) + "'");
    }
    std::string field = lower(tok[3]);
    if (field == "real" || field == "integer" || field == "double") {
        h.field = Field::kReal;
    } else if (field == "pattern" && h.format == Format::kCoordinate) {
        h.field = Field::kPattern;
    } else {
        throw ParseError(1, "unsupported field '" + std::string(tok[3]) + "' (real symmetric matrices only)");
    }
    std::string symmetry = lower(tok[4]);
    if (symmetry == "general") {
        h.symmetry = Symmetry::kGeneral;
    } else if (symmetry == "symmetric") {
        h.symmetry = Symmetry::kSymmetric;
    } else {
        throw ParseError(1, "unsupported symmetry '" + std::string(tok[4]) + "' (real symmetric matrices only)");
    }
    return h;
}

/// Yields whitespace-separated tokens of the data section, skipping comments and blank lines.
class TokenReader {
   public:
    TokenReader(std::istream &in, std::size_t line_no) : in_(in), line_no_(line_no) {
    }

    /// Tokens of the next non-comment, non-blank line; empty at end of input.
    std::vector<std::string_view> next_line() {
        while (std::getline(in_, buf_)) {
            line_no_++;
            if (!buf_.empty() && buf_.back() == '\r') {
                buf_.pop_back();
            }
            if (!buf_.empty() && buf_.front() == '%') {
                continue;
            }
            auto tok = split_ws(buf_);
            if (!tok.empty()) {
                return tok;
            }
        }
        return {};
    }

    std::size_t line() const {
        return line_no_;
    }

   private:
    std::istream &in_;
    std::size_t line_no_;
    std::string buf_;
};

DenseMatrix read_array(const Header &h, TokenReader &reader) {
    auto size = reader.next_line();
    if (size.size() != 2) {
        throw ParseError(reader.line(), "expected '<rows> <cols>' size line");
    }
    std::size_t rows = parse_index(size[0], reader.line());
    std::size_t cols = parse_index(size[1], reader.line());
    if (rows != cols) {
        throw ParseError(reader.line(), "matrix is not square");
    }
    const std::size_t n = rows;
    std::size_t expected = h.symmetry == Symmetry::kSymmetric ? n * (n + 1) / 2 : n * n;
    std::vector<double> values;
    values.reserve(expected);
    while (values.size() < expected) {
        auto tok = reader.next_line();
        if (tok.empty()) {
            throw ParseError(reader.line(), "expected " + std::to_string(expected) + " values, found " +
                                                std::to_string(values.size()));
        }
        for (auto t : tok) {
            values.push_back(parse_real(t, reader.line()));
        }
    }
    if (values.size() != expected || !reader.next_line().empty()) {
        throw ParseError(reader.line(), "more than " + std::to_string(expected) + " values");
    }

    DenseMatrix m(n);
    std::size_t k = 0;
    if (h.symmetry == Symmetry::kSymmetric) {
        for (std::size_t j = 0; j < n; j++) {
            for (std::size_t i = j; i < n; i++) {
                m.set_symmetric(i, j, values[k++]);
            }
        }
        return m;
    }
    std::vector<double> data(n * n);
    for (std::size_t j = 0; j < n; j++) {
        for (std::size_t i = 0; i < n; i++) {
            data[i * n + j] = values[k++];
        }
    }
    try {
        return DenseMatrix(n, std::move(data));
    } catch (const std::invalid_argument &e) {
        throw ParseError(0, e.what());
    }
}

SparseSymmetric read_coordinate(const Header &h, TokenReader &reader) {
    auto size = reader.next_line();
    if (size.size() != 3) {
        throw ParseError(reader.line(), "expected '<rows> <cols> <nnz>' size line");
    }
    std::size_t rows = parse_index(size[0], reader.line());
    std::size_t cols = parse_index(size[1], reader.line());
    std::size_t nnz = parse_index(size[2], reader.line());
    if (rows != cols) {
        throw ParseError(reader.line(), "matrix is not square");
    }
    const std::size_t n = rows;
    const std::size_t width = h.field == Field::kPattern ? 2 : 3;

    std::map<std::pair<std::size_t, std::size_t>, double> cells;
    for (std::size_t k = 0; k < nnz; k++) {
        auto tok = reader.next_line();
        if (tok.empty()) {
            throw ParseError(reader.line(), "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
        }
        if (tok.size() != width) {
            throw ParseError(reader.line(), "expected " + std::to_string(width) + " fields per entry");
        }
        std::size_t i = parse_index(tok[0], reader.line());
        std::size_t j = parse_index(tok[1], reader.line());
        if (i < 1 || i > n || j < 1 || j > n) {
            throw ParseError(reader.line(), "index out of range");
        }
        double v = width == 3 ? parse_real(tok[2], reader.line()) : 1.0;
        if (!cells.emplace(std::make_pair(i - 1, j - 1), v).second) {
            throw ParseError(reader.line(), "duplicate entry (" + std::string(tok[0]) + ", " + std::string(tok[1]) + ")");
        }
    }
    if (!reader.next_line().empty()) {
        throw ParseError(reader.line(), "more than " + std::to_string(nnz) + " entries");
    }

    std::vector<SparseSymmetric::Entry> entries;
    for (const auto &[ij, v] : cells) {
        auto [i, j] = ij;
        if (h.symmetry == Symmetry::kSymmetric) {
            if (cells.count({j, i}) && i != j) {
                throw ParseError(0, "symmetric file lists both (" + std::to_string(i + 1) + ", " +
                                        std::to_string(j + 1) + ") and its mirror");
            }
            entries.push_back({i, j, v});
            continue;
        }
        if (i > j) {
            continue;
        }
        if (i != j) {
            auto mirror = cells.find({j, i});
            double other = mirror == cells.end() ? 0.0 : mirror->second;
            if (other != v) {
                throw ParseError(0, "general file is not symmetric at (" + std::to_string(i + 1) + ", " +
                                        std::to_string(j + 1) + ")");
            }
        }
        entries.push_back({i, j, v});
    }
    if (h.symmetry == Symmetry::kGeneral) {
        // A strictly lower entry whose upper mirror is absent was skipped above.
        for (const auto &[ij, v] : cells) {
            if (ij.first > ij.second && !cells.count({ij.second, ij.first}) && v != 0) {
                throw ParseError(0, "general file is not symmetric at (" + std::to_string(ij.first + 1) + ", " +
                                        std::to_string(ij.second + 1) + ")");
            }
        }
    }
    return SparseSymmetric(n, std::move(entries));
}

}  // namespace

MatrixMarketMatrix read_matrix_market(std::istream &in) {
    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw ParseError(1, "empty input");
    }
    if (!header_line.empty() && header_line.back() == '\r') {
        header_line.pop_back();
    }
    Header h = parse_header(header_line);
    TokenReader reader(in, 1);
    if (h.format == Format::kArray) {
        return read_array(h, reader);
    }
    return read_coordinate(h, reader);
}

MatrixMarketMatrix read_matrix_market_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_matrix_market(in);
}

void write_matrix_market_array(const DenseMatrix &m, std::ostream &out) {
    out << "%%MatrixMarket matrix array real symmetric\n";
    out << m.dim() << ' ' << m.dim() << '\n';
    char buf[40];
    for (std::size_t j = 0; j < m.dim(); j++) {
        for (std::size_t i = j; i < m.dim(); i++) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", m(i, j));
            out << buf;
        }
    }
}

void write_matrix_market_coordinate(const SparseSymmetric &m, std::ostream &out) {
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << m.dim() << ' ' << m.dim() << ' ' << m.nnz() << '\n';
    char buf[40];
    for (const auto &e : m.entries()) {
        // Stored upper, written lower.
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
        out << e.col + 1 << ' ' << e.row + 1 << ' ' << buf << '\n';
    }
}

OraclePtr make_oracle(MatrixMarketMatrix m) {
    if (auto *dense = std::get_if<DenseMatrix>(&m)) {
        return make_dense_oracle(std::move(*dense));
    }
    return make_sparse_oracle(std::get<SparseSymmetric>(std::move(m)));
}

}  // namespace mubtrace
