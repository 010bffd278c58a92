#include "ccspace/partition_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ccspace/errors.hpp"
#include "ccspace/io.hpp"
#include "ccspace/parallel.hpp"

namespace ccspace {

namespace {

struct Contingency {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> cells;
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
};

Contingency contingency(const Partition& p, const Partition& q) {
    if (p.size() != q.size())
        throw DimensionError("partitions of " + std::to_string(p.size()) + " and " + std::to_string(q.size()) +
                             " elements");
    Contingency t;
    t.rows = p.module_count();
    t.cols = q.module_count();
    t.cells.assign(t.rows * t.cols, 0);
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        ++t.cells[p[i] * t.cols + q[i]];
        ++t.row_sums[p[i]];
        ++t.col_sums[q[i]];
    }
    return t;
}

}  // namespace

double DissimilarityMatrix::diameter() const noexcept {
    double best = 0.0;
    for (double v : d_) best = std::max(best, v);
    return best;
}

double entropy(const Partition& p) {
    const double n = static_cast<double>(p.size());
    double h = 0.0;
    for (std::size_t s : p.module_sizes()) {
        const double f = static_cast<double>(s) / n;
        h -= f * std::log(f);
    }
    return h;
}

double mutual_information(const Partition& p, const Partition& q) {
    const Contingency t = contingency(p, q);
    const double n = static_cast<double>(p.size());
    double mi = 0.0;
    for (std::size_t r = 0; r < t.rows; ++r)
        for (std::size_t c = 0; c < t.cols; ++c) {
            const auto nij = static_cast<double>(t.cells[r * t.cols + c]);
            if (nij == 0.0) continue;
            mi += nij / n * std::log(n * nij / (static_cast<double>(t.row_sums[r]) * static_cast<double>(t.col_sums[c])));
        }
    return mi;
}

double variation_of_information(const Partition& p, const Partition& q) {
    // Summed cell by cell as n_ij [ln(a_i / n_ij) + ln(b_j / n_ij)] / n: every term is
    // non-negative and identical partitions give exactly zero.
    const Contingency t = contingency(p, q);
    const double n = static_cast<double>(p.size());
    double vi = 0.0;
    for (std::size_t r = 0; r < t.rows; ++r)
        for (std::size_t c = 0; c < t.cols; ++c) {
            const auto nij = static_cast<double>(t.cells[r * t.cols + c]);
            if (nij == 0.0) continue;
            vi += nij * (std::log(static_cast<double>(t.row_sums[r]) / nij) +
                         std::log(static_cast<double>(t.col_sums[c]) / nij));
        }
    return vi / n;
}

DissimilarityMatrix dissimilarity_matrix(std::span<const Partition> solutions, std::size_t threads) {
    if (solutions.empty()) throw ParameterError("dissimilarity matrix needs at least one solution");
    if (solutions.size() > kMaxDissimilaritySize)
        throw GuardError("refusing to build a " + std::to_string(solutions.size()) + " x " +
                         std::to_string(solutions.size()) + " dissimilarity matrix");
    const std::size_t n = solutions.front().size();
    for (const auto& s : solutions)
        if (s.size() != n) throw DimensionError("solutions have different vertex counts");

    DissimilarityMatrix d(solutions.size(), n);
    parallel_for(solutions.size(), threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < solutions.size(); ++j) d.set(i, j, variation_of_information(solutions[i], solutions[j]));
    });
    return d;
}

DissimilarityMatrix dissimilarity_matrix(const SolutionSpace& space, std::size_t threads) {
    return dissimilarity_matrix(std::span<const Partition>(space.solutions), threads);
}

void write_dissimilarity_csv(std::ostream& out, const DissimilarityMatrix& d) {
    std::string line;
    for (std::size_t i = 0; i < d.size(); ++i) {
        line.clear();
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (j) line += ',';
            line += io::format_significant(d(i, j), 12);
        }
        line += '\n';
        out << line;
    }
}

DissimilarityMatrix read_dissimilarity_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw ParseError("bad matrix entry '" + cell + "' on row " + std::to_string(rows.size() + 1));
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("dissimilarity matrix is empty");
    for (const auto& row : rows)
        if (row.size() != rows.size()) throw ParseError("dissimilarity matrix is not square");
    DissimilarityMatrix d(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[i][j] < 0.0) throw ParseError("negative dissimilarity");
            if (j > i && rows[i][j] != rows[j][i]) throw ParseError("dissimilarity matrix is not symmetric");
            if (i == j && rows[i][j] != 0.0) throw ParseError("dissimilarity matrix has a non-zero diagonal");
        }
        for (std::size_t j = i + 1; j < rows.size(); ++j) d.set(i, j, rows[i][j]);
    }
    return d;
}

}  // namespace ccspace
