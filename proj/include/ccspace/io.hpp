#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ccspace/partition.hpp"
#include "ccspace/signed_graph.hpp"
#include "ccspace/solution_space.hpp"

namespace ccspace::io {

// Graph file: first line `n`, then one `i j s [w]` line per pair (0-based i < j, s = +1/-1).
// Every pair must appear exactly once.
SignedGraph read_graph(std::istream& in);
SignedGraph read_graph(const std::filesystem::path& path);
/// The weight column is written only for weighted graphs.
void write_graph(std::ostream& out, const SignedGraph& g);
void write_graph(const std::filesystem::path& path, const SignedGraph& g);

// Partition file: one line of n space-separated module indices (canonicalized on read).
Partition read_partition(std::istream& in);
Partition read_partition(const std::filesystem::path& path);
void write_partition(std::ostream& out, const Partition& p);
void write_partition(const std::filesystem::path& path, const Partition& p);

// Solutions file: header `I* p complete`, then one membership vector per line.
SolutionSpace read_solutions(std::istream& in);
SolutionSpace read_solutions(const std::filesystem::path& path);
void write_solutions(std::ostream& out, const SolutionSpace& space);
void write_solutions(const std::filesystem::path& path, const SolutionSpace& space);

/// Integral values print without a fractional part; others with 17 significant digits.
std::string format_number(double v);
/// printf-style %.{digits}g.
std::string format_significant(double v, int digits);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace ccspace::io
