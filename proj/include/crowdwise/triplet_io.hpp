#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "crowdwise/stochastic_matrix.hpp"

namespace crowdwise {

// Sparse triplet text format:
//   # comment lines start with '#'
//   rows cols nnz
//   row col value          (0-based, one entry per line)
// Values are written with 17 significant digits so a write/read round trip
// reproduces every double bit-for-bit.

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_triplets(std::ostream& os, const SparseMatrix& m,
                           const std::string& comment = "") {
    if (!comment.empty()) os << "# " << comment << "\n";
    os << m.n() << " " << m.n() << " " << m.nnz() << "\n";
    for (int r = 0; r < m.n(); ++r)
        for (int k = m.row_begin(r); k < m.row_end(r); ++k)
            os << r << " " << m.col(k) << " " << format_double(m.value(k)) << "\n";
}

inline void write_matrix_file(const std::string& path, const SparseMatrix& m,
                              const std::string& comment = "") {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_triplets(os, m, comment);
}

struct ParsedTriplets {
    int n = 0;
    std::vector<Triplet> entries;
};

inline ParsedTriplets read_triplets(std::istream& is, const std::string& name = "<stream>") {
    ParsedTriplets out;
    std::string line;
    long line_no = 0;
    long expected = -1;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            int rows = 0, cols = 0;
            long nnz = 0;
            if (!(ls >> rows >> cols >> nnz) || rows != cols || rows < 1 || nnz < 0)
                throw Error(name + ":" + std::to_string(line_no) + ": malformed header line");
            out.n = rows;
            expected = nnz;
            have_header = true;
            continue;
        }
        Triplet t;
        if (!(ls >> t.row >> t.col >> t.value))
            throw Error(name + ":" + std::to_string(line_no) + ": malformed triplet line");
        std::string rest;
        if (ls >> rest)
            throw Error(name + ":" + std::to_string(line_no) + ": trailing tokens on triplet line");
        out.entries.push_back(t);
    }
    if (!have_header) throw Error(name + ": missing header line");
    if (expected >= 0 && static_cast<long>(out.entries.size()) != expected)
        throw Error(name + ": header announces " + std::to_string(expected) + " entries but " +
                    std::to_string(out.entries.size()) + " were found");
    return out;
}

inline RowStochasticMatrix read_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path);
    ParsedTriplets t = read_triplets(is, path);
    return RowStochasticMatrix::from_triplets(t.n, std::move(t.entries));
}

} // namespace crowdwise
