#include "ccspace/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccspace/errors.hpp"

namespace ccspace::io {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    return out;
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
}

std::string at_line(std::size_t line_no) { return " (line " + std::to_string(line_no) + ")"; }

std::vector<Label> parse_labels(const std::string& line, std::size_t line_no) {
    std::istringstream ls(line);
    std::vector<Label> labels;
    long long v = 0;
    while (ls >> v) {
        if (v < 0) throw ParseError("negative module index" + at_line(line_no));
        labels.push_back(static_cast<Label>(v));
    }
    if (!ls.eof()) throw ParseError("non-numeric module index" + at_line(line_no));
    if (labels.empty()) throw ParseError("empty membership vector" + at_line(line_no));
    return labels;
}

}  // namespace

SignedGraph read_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw ParseError("graph file is empty");
    long long n_raw = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> n_raw) || n_raw < 1) throw ParseError("first line must hold the vertex count" + at_line(line_no));
    }
    const auto n = static_cast<std::size_t>(n_raw);
    const std::size_t m = pair_count(n);
    std::vector<std::int8_t> signs(m, 0);
    std::vector<double> weights(m, 1.0);
    std::size_t seen = 0;
    while (next_content_line(in, line, line_no)) {
        std::istringstream ls(line);
        long long i = 0, j = 0;
        std::string sign_text;
        if (!(ls >> i >> j >> sign_text)) throw ParseError("expected `i j s [w]`" + at_line(line_no));
        if (i < 0 || j < 0 || i >= n_raw || j >= n_raw || i == j)
            throw ParseError("vertex index out of range" + at_line(line_no));
        if (i > j) std::swap(i, j);
        int s = 0;
        if (sign_text == "+1" || sign_text == "1" || sign_text == "+")
            s = 1;
        else if (sign_text == "-1" || sign_text == "-")
            s = -1;
        else
            throw ParseError("sign must be +1 or -1" + at_line(line_no));
        double w = 1.0;
        if (ls >> w) {
            if (!(w > 0.0)) throw ParseError("weight must be positive" + at_line(line_no));
        } else if (!ls.eof()) {
            throw ParseError("bad weight" + at_line(line_no));
        }
        const std::size_t k = pair_index(n, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (signs[k] != 0) throw ParseError("duplicate pair" + at_line(line_no));
        signs[k] = static_cast<std::int8_t>(s);
        weights[k] = w;
        ++seen;
    }
    if (seen != m)
        throw ParseError("graph is incomplete: " + std::to_string(seen) + " of " + std::to_string(m) + " pairs given");
    return SignedGraph(n, std::move(signs), std::move(weights));
}

SignedGraph read_graph(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const SignedGraph& g) {
    const bool weighted = !g.unweighted();
    out << g.n() << '\n';
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = i + 1; j < g.n(); ++j) {
            out << i << ' ' << j << ' ' << (g.sign(i, j) > 0 ? "+1" : "-1");
            if (weighted) out << ' ' << format_number(g.weight(i, j));
            out << '\n';
        }
}

void write_graph(const std::filesystem::path& path, const SignedGraph& g) {
    auto out = open_out(path);
    write_graph(out, g);
}

Partition read_partition(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw ParseError("partition file is empty");
    const auto labels = parse_labels(line, line_no);
    return Partition::canonicalize(std::span<const Label>(labels));
}

Partition read_partition(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_partition(in);
}

void write_partition(std::ostream& out, const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
    out << '\n';
}

void write_partition(const std::filesystem::path& path, const Partition& p) {
    auto out = open_out(path);
    write_partition(out, p);
}

SolutionSpace read_solutions(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) throw ParseError("solutions file is empty");
    SolutionSpace space;
    std::size_t declared = 0;
    {
        std::istringstream ls(line);
        int complete = 0;
        if (!(ls >> space.optimum >> declared >> complete))
            throw ParseError("header must be `I* p complete`" + at_line(line_no));
        space.complete = complete != 0;
    }
    std::size_t n = 0;
    while (next_content_line(in, line, line_no)) {
        const auto labels = parse_labels(line, line_no);
        if (n == 0) n = labels.size();
        if (labels.size() != n) throw ParseError("solutions of different lengths" + at_line(line_no));
        space.solutions.push_back(Partition::canonicalize(std::span<const Label>(labels)));
    }
    if (space.solutions.size() != declared)
        throw ParseError("header declares " + std::to_string(declared) + " solutions, file holds " +
                         std::to_string(space.solutions.size()));
    space.overflow = !space.complete;
    return space;
}

SolutionSpace read_solutions(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_solutions(in);
}

void write_solutions(std::ostream& out, const SolutionSpace& space) {
    out << format_number(space.optimum) << ' ' << space.solutions.size() << ' ' << (space.complete ? 1 : 0) << '\n';
    for (const auto& p : space.solutions) write_partition(out, p);
}

void write_solutions(const std::filesystem::path& path, const SolutionSpace& space) {
    auto out = open_out(path);
    write_solutions(out, space);
}

std::string format_number(double v) { return format_significant(v, 17); }

std::string format_significant(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ParseError("cannot write " + tmp.string());
        out << content;
        if (!out) throw ParseError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace ccspace::io
