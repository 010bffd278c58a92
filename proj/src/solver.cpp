#include "ccspace/solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ccspace/errors.hpp"
#include "ccspace/io.hpp"
#include "ccspace/objective.hpp"
#include "ccspace/parallel.hpp"
#include "ccspace/rng.hpp"

namespace ccspace {

namespace {

using Clock = std::chrono::steady_clock;

double tolerance_for(const SignedGraph& g) { return 1e-9 * std::max(1.0, g.total_weight()); }

std::optional<Clock::time_point> deadline_for(const SolverConfig& config) {
    if (!config.time_limit) return std::nullopt;
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*config.time_limit));
}

// Greedy static order: start from the vertex of largest total |w|, then repeatedly take the
// vertex with the largest |w| towards the vertices already ordered. Ties go to the lowest index.
std::vector<std::size_t> vertex_order(const SignedGraph& g) {
    const std::size_t n = g.n();
    std::vector<double> attraction(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) attraction[i] += g.weight(i, j);

    std::vector<std::size_t> order;
    std::vector<bool> used(n, false);
    std::vector<double> towards(n, 0.0);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            const double score = step == 0 ? attraction[v] : towards[v];
            const double best = pick == n ? -1.0 : (step == 0 ? attraction[pick] : towards[pick]);
            if (pick == n || score > best) pick = v;
        }
        used[pick] = true;
        order.push_back(pick);
        for (std::size_t v = 0; v < n; ++v)
            if (!used[v]) towards[v] += g.weight(pick, v);
    }
    return order;
}

/// The graph relabeled by search position, plus the static bound for free-free pairs.
struct SearchModel {
    std::size_t n = 0;
    std::vector<std::size_t> order;
    std::vector<double> w;
    /// tail[t]: lower bound on the frustration among positions t..n-1 alone.
    std::vector<double> tail;

    double at(std::size_t a, std::size_t b) const noexcept { return w[a * n + b]; }
};

// Every (+, +, -) triangle forces at least one frustrated pair whatever the partition.
// Greedily packing such triangles against residual pair weights gives a valid bound.
double triangle_packing(const SearchModel& m, std::size_t from) {
    const std::size_t n = m.n;
    std::vector<double> residual(n * n, 0.0);
    for (std::size_t a = from; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) residual[a * n + b] = std::fabs(m.at(a, b));
    double total = 0.0;
    for (std::size_t a = from; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                const int positives = (m.at(a, b) > 0) + (m.at(a, c) > 0) + (m.at(b, c) > 0);
                if (positives != 2) continue;
                double& ab = residual[a * n + b];
                double& ac = residual[a * n + c];
                double& bc = residual[b * n + c];
                const double delta = std::min({ab, ac, bc});
                if (delta <= 0.0) continue;
                total += delta;
                ab -= delta;
                ac -= delta;
                bc -= delta;
            }
    return total;
}

SearchModel build_model(const SignedGraph& g, std::vector<std::size_t> order) {
    SearchModel m;
    m.n = g.n();
    m.order = std::move(order);
    m.w.assign(m.n * m.n, 0.0);
    for (std::size_t a = 0; a < m.n; ++a)
        for (std::size_t b = 0; b < m.n; ++b)
            if (a != b) m.w[a * m.n + b] = g.signed_weight(m.order[a], m.order[b]);
    m.tail.assign(m.n + 1, 0.0);
    for (std::size_t t = 0; t + 2 < m.n; ++t) m.tail[t] = triangle_packing(m, t);
    return m;
}

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    return order;
}

/// Assignment of the first `depth` positions with incremental attachment costs for the rest.
///
/// For a free position u and module c, `diff(u, c)` is (negative - positive) weight from u to
/// the assigned members of c, and `positive(u)` the positive weight from u to all assigned
/// positions. Placing u in c then costs positive(u) + diff(u, c) on its assigned pairs, and
/// opening a new module costs positive(u).
class SearchState {
public:
    explicit SearchState(const SearchModel& m)
        : m_(m), labels_(m.n, 0), positive_(m.n, 0.0), diff_(m.n * m.n, 0.0) {
        fixed_stack_.reserve(m.n);
        modules_stack_.reserve(m.n);
    }

    std::size_t depth() const noexcept { return depth_; }
    std::size_t modules() const noexcept { return modules_; }
    double fixed() const noexcept { return fixed_; }
    const std::vector<Label>& labels() const noexcept { return labels_; }

    void push(Label c) {
        const std::size_t n = m_.n;
        const std::size_t t = depth_;
        fixed_stack_.push_back(fixed_);
        modules_stack_.push_back(modules_);
        fixed_ += positive_[t] + diff_[t * n + c];
        labels_[t] = c;
        if (c == modules_) ++modules_;
        const double* row = &m_.w[t * n];
        for (std::size_t u = t + 1; u < n; ++u) {
            const double w = row[u];
            if (w > 0) positive_[u] += w;
            diff_[u * n + c] -= w;
        }
        ++depth_;
    }

    void pop() {
        const std::size_t n = m_.n;
        --depth_;
        const std::size_t t = depth_;
        const Label c = labels_[t];
        const double* row = &m_.w[t * n];
        for (std::size_t u = t + 1; u < n; ++u) {
            const double w = row[u];
            if (w > 0) positive_[u] -= w;
            diff_[u * n + c] += w;
        }
        fixed_ = fixed_stack_.back();
        fixed_stack_.pop_back();
        modules_ = modules_stack_.back();
        modules_stack_.pop_back();
    }

    /// Fixed frustration + cheapest attachment of every free position + tail bound.
    double bound() const noexcept {
        const std::size_t n = m_.n;
        double b = fixed_ + m_.tail[depth_];
        for (std::size_t u = depth_; u < n; ++u) {
            double best = 0.0;
            const double* d = &diff_[u * n];
            for (std::size_t c = 0; c < modules_; ++c) best = std::min(best, d[c]);
            b += positive_[u] + best;
        }
        return b;
    }

    Partition to_partition() const {
        std::vector<Label> raw(m_.n);
        for (std::size_t pos = 0; pos < m_.n; ++pos) raw[m_.order[pos]] = labels_[pos];
        return Partition::canonicalize(std::span<const Label>(raw));
    }

private:
    const SearchModel& m_;
    std::size_t depth_ = 0;
    std::size_t modules_ = 0;
    double fixed_ = 0.0;
    std::vector<Label> labels_;
    std::vector<double> positive_;
    std::vector<double> diff_;
    std::vector<double> fixed_stack_;
    std::vector<std::size_t> modules_stack_;
};

double evaluate_positions(const SearchModel& m, const std::vector<Label>& labels) {
    double total = 0.0;
    for (std::size_t a = 0; a < m.n; ++a)
        for (std::size_t b = a + 1; b < m.n; ++b) {
            const double w = m.at(a, b);
            const bool together = labels[a] == labels[b];
            if (together && w < 0) total -= w;
            if (!together && w > 0) total += w;
        }
    return total;
}

constexpr Label kNoLabel = std::numeric_limits<Label>::max();

// Single-vertex moves (including to a fresh module) until no move lowers the imbalance.
void local_search(const SearchModel& m, std::vector<Label>& labels, double eps) {
    const std::size_t n = m.n;
    std::vector<double> cost(n + 1);
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t v = 0; v < n; ++v) {
            // Relabel densely so labels stay below n and the fresh label fits in cost.
            std::vector<Label> remap(std::max<std::size_t>(n, 8) + 1, kNoLabel);
            Label fresh = 0;
            for (Label& l : labels) {
                if (remap[l] == kNoLabel) remap[l] = fresh++;
                l = remap[l];
            }
            std::fill(cost.begin(), cost.begin() + fresh + 1, 0.0);
            double to_all_positive = 0.0;
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v) continue;
                const double w = m.at(v, u);
                if (w > 0) to_all_positive += w;
                cost[labels[u]] -= w;
            }
            const Label current = labels[v];
            double best_cost = to_all_positive + cost[current];
            Label best = current;
            for (Label c = 0; c <= fresh; ++c) {
                const double value = to_all_positive + cost[c];
                if (value < best_cost - eps) {
                    best_cost = value;
                    best = c;
                }
            }
            if (best != current) {
                labels[v] = best;
                improved = true;
            }
        }
    }
}

struct Incumbent {
    std::vector<Label> labels;
    double value = std::numeric_limits<double>::infinity();
};

Incumbent heuristic_incumbent(const SearchModel& m, double eps) {
    const std::size_t n = m.n;
    std::vector<std::vector<Label>> starts;
    starts.emplace_back(n, 0);
    {
        std::vector<Label> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<Label>(i);
        starts.push_back(std::move(s));
    }
    // Greedy sequential placement in search order.
    {
        SearchState state(m);
        for (std::size_t t = 0; t < n; ++t) {
            Label best = 0;
            double best_cost = std::numeric_limits<double>::infinity();
            for (Label c = 0; c <= state.modules(); ++c) {
                state.push(c);
                const double f = state.fixed();
                state.pop();
                if (f < best_cost - eps) {
                    best_cost = f;
                    best = c;
                }
            }
            state.push(best);
        }
        starts.push_back(state.labels());
    }
    Rng rng(0x5EEDC0FFEEULL);
    for (int r = 0; r < 16; ++r) {
        std::vector<Label> s(n);
        const std::uint64_t spread = 2 + static_cast<std::uint64_t>(r % 4);
        for (auto& l : s) l = static_cast<Label>(rng.below(spread));
        starts.push_back(std::move(s));
    }

    Incumbent best;
    for (auto& s : starts) {
        local_search(m, s, eps);
        const double value = evaluate_positions(m, s);
        if (value < best.value - eps) {
            best.value = value;
            best.labels = s;
        }
    }
    return best;
}

class OptimumSearch {
public:
    OptimumSearch(const SearchModel& m, Incumbent incumbent, double eps, std::optional<Clock::time_point> deadline)
        : m_(m), state_(m), best_(std::move(incumbent)), eps_(eps), deadline_(deadline) {}

    void run() { visit(); }

    bool timed_out() const noexcept { return timed_out_; }
    std::size_t nodes() const noexcept { return nodes_; }
    const Incumbent& best() const noexcept { return best_; }
    std::vector<Label> best_labels() const { return best_.labels; }

private:
    void visit() {
        if (timed_out_) return;
        if ((++nodes_ & 1023) == 0 && deadline_ && Clock::now() > *deadline_) {
            timed_out_ = true;
            return;
        }
        if (state_.depth() == m_.n) {
            if (state_.fixed() < best_.value - eps_) {
                best_.value = state_.fixed();
                best_.labels = state_.labels();
            }
            return;
        }
        // Children in order of increasing bound, so good completions are met early.
        std::array<std::pair<double, Label>, 64> stack_children;
        std::vector<std::pair<double, Label>> heap_children;
        const std::size_t options = state_.modules() + 1;
        std::pair<double, Label>* children = stack_children.data();
        if (options > stack_children.size()) {
            heap_children.resize(options);
            children = heap_children.data();
        }
        for (Label c = 0; c < options; ++c) {
            state_.push(c);
            children[c] = {state_.bound(), c};
            state_.pop();
        }
        std::sort(children, children + options);
        for (std::size_t i = 0; i < options; ++i) {
            if (children[i].first >= best_.value - eps_) break;
            state_.push(children[i].second);
            visit();
            state_.pop();
            if (timed_out_) return;
        }
    }

    const SearchModel& m_;
    SearchState state_;
    Incumbent best_;
    double eps_;
    std::optional<Clock::time_point> deadline_;
    std::size_t nodes_ = 0;
    bool timed_out_ = false;
};

class EnumerationSearch {
public:
    EnumerationSearch(const SearchModel& m, double optimum, double eps, std::size_t cap,
                      std::optional<Clock::time_point> deadline)
        : m_(m), state_(m), optimum_(optimum), eps_(eps), cap_(cap), deadline_(deadline) {}

    /// Explores the subtree below `prefix` (positions 0..prefix.size()-1 already fixed).
    void run(const std::vector<Label>& prefix) {
        for (Label c : prefix) state_.push(c);
        if (state_.bound() <= optimum_ + eps_) visit();
    }

    std::vector<Partition>& found() noexcept { return found_; }
    bool stopped_by_cap() const noexcept { return found_.size() >= cap_; }
    bool timed_out() const noexcept { return timed_out_; }
    std::size_t nodes() const noexcept { return nodes_; }

private:
    void visit() {
        if ((++nodes_ & 1023) == 0 && deadline_ && Clock::now() > *deadline_) timed_out_ = true;
        if (timed_out_ || found_.size() >= cap_) return;
        if (state_.depth() == m_.n) {
            if (std::fabs(state_.fixed() - optimum_) <= eps_) found_.push_back(state_.to_partition());
            return;
        }
        // Ties with the optimum must survive, so only strictly larger bounds are cut.
        for (Label c = 0; c <= state_.modules(); ++c) {
            state_.push(c);
            if (state_.bound() <= optimum_ + eps_) visit();
            state_.pop();
            if (timed_out_ || found_.size() >= cap_) return;
        }
    }

    const SearchModel& m_;
    SearchState state_;
    double optimum_;
    double eps_;
    std::size_t cap_;
    std::optional<Clock::time_point> deadline_;
    std::vector<Partition> found_;
    std::size_t nodes_ = 0;
    bool timed_out_ = false;
};

// Surviving restricted-growth prefixes of the given length, in depth-first order.
void collect_prefixes(SearchState& state, std::size_t length, double optimum, double eps,
                      std::vector<std::vector<Label>>& out) {
    if (state.depth() == length) {
        out.emplace_back(state.labels().begin(), state.labels().begin() + static_cast<std::ptrdiff_t>(length));
        return;
    }
    for (Label c = 0; c <= state.modules(); ++c) {
        state.push(c);
        if (state.bound() <= optimum + eps) collect_prefixes(state, length, optimum, eps, out);
        state.pop();
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

OptimumResult solve_optimum(const SignedGraph& g, const SolverConfig& config) {
    const auto start = Clock::now();
    const double eps = tolerance_for(g);
    const SearchModel m = build_model(g, vertex_order(g));
    Incumbent incumbent = heuristic_incumbent(m, eps);

    OptimumSearch search(m, std::move(incumbent), eps, deadline_for(config));
    search.run();
    if (search.timed_out()) {
        SearchState root(m);
        throw IncompleteSearchError("time limit reached before the optimum was proven; best imbalance found " +
                                        io::format_number(search.best().value),
                                    search.best().value, root.bound());
    }

    std::vector<Label> raw(m.n);
    const auto& labels = search.best().labels;
    for (std::size_t pos = 0; pos < m.n; ++pos) raw[m.order[pos]] = labels[pos];

    OptimumResult result;
    result.optimum = search.best().value;
    result.witness = Partition::canonicalize(std::span<const Label>(raw));
    result.stats.nodes_optimum = search.nodes();
    result.stats.seconds = seconds_since(start);
    return result;
}

SolutionSpace enumerate_optima(const SignedGraph& g, double optimum, const SolverConfig& config) {
    if (config.enumeration_limit == 0) throw ParameterError("enumeration limit must be at least 1");
    if (config.thread_count == 0) throw ParameterError("thread count must be at least 1");
    const auto start = Clock::now();
    const double eps = tolerance_for(g);
    const SearchModel m = build_model(g, vertex_order(g));
    const auto deadline = deadline_for(config);

    std::vector<std::vector<Label>> prefixes;
    {
        SearchState root(m);
        const std::size_t length = std::min(m.n, config.split_depth + 1);
        collect_prefixes(root, length, optimum, eps, prefixes);
    }

    // One more than the limit per subtree tells a truncated listing from an exact one.
    const std::size_t cap = config.enumeration_limit + 1;
    std::vector<std::vector<Partition>> found(prefixes.size());
    std::vector<std::size_t> nodes(prefixes.size(), 0);
    std::vector<char> timed_out(prefixes.size(), 0);
    parallel_for(prefixes.size(), config.thread_count, [&](std::size_t i) {
        EnumerationSearch search(m, optimum, eps, cap, deadline);
        search.run(prefixes[i]);
        found[i] = std::move(search.found());
        nodes[i] = search.nodes();
        timed_out[i] = search.timed_out();
    });

    SolutionSpace space;
    space.optimum = optimum;
    bool any_timeout = false;
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        space.stats.nodes_enumeration += nodes[i];
        any_timeout = any_timeout || timed_out[i];
        for (auto& p : found[i]) {
            if (space.solutions.size() == config.enumeration_limit) {
                space.overflow = true;
                break;
            }
            space.solutions.push_back(std::move(p));
        }
        if (space.overflow) break;
    }
    std::sort(space.solutions.begin(), space.solutions.end());
    space.solutions.erase(std::unique(space.solutions.begin(), space.solutions.end()), space.solutions.end());

    space.complete = !space.overflow && !any_timeout && !space.solutions.empty();
    if (any_timeout) space.diagnostic = "time limit reached during enumeration";
    else if (space.overflow)
        space.diagnostic = "enumeration limit of " + std::to_string(config.enumeration_limit) + " reached";
    else if (space.solutions.empty())
        space.diagnostic = "no partition attains imbalance " + io::format_number(optimum) +
                           "; the given value is below the true optimum";
    space.stats.seconds = seconds_since(start);
    return space;
}

SolutionSpace solve_all(const SignedGraph& g, const SolverConfig& config) {
    const auto optimum = solve_optimum(g, config);
    SolverConfig remaining = config;
    if (config.time_limit) remaining.time_limit = std::max(0.0, *config.time_limit - optimum.stats.seconds);
    SolutionSpace space = enumerate_optima(g, optimum.optimum, remaining);
    space.stats.nodes_optimum = optimum.stats.nodes_optimum;
    space.stats.seconds += optimum.stats.seconds;
    return space;
}

SolutionSpace brute_force_optima(const SignedGraph& g) {
    const std::size_t n = g.n();
    if (n > kBruteForceMaxVertices)
        throw GuardError("exhaustive search is limited to " + std::to_string(kBruteForceMaxVertices) +
                         " vertices; graph has " + std::to_string(n));
    const auto start = Clock::now();
    const double eps = tolerance_for(g);

    SolutionSpace space;
    space.optimum = std::numeric_limits<double>::infinity();
    std::vector<Label> a(n, 0);
    std::vector<Label> prefix_max(n, 0);
    std::size_t visited = 0;
    for (;;) {
        ++visited;
        Partition p = Partition::from_canonical(a);
        const double value = imbalance(g, p);
        if (value < space.optimum - eps) {
            space.optimum = value;
            space.solutions.clear();
        }
        if (std::fabs(value - space.optimum) <= eps) space.solutions.push_back(std::move(p));

        // Next restricted-growth string in lexicographic order.
        std::size_t i = n;
        while (i > 1 && a[i - 1] > prefix_max[i - 2]) --i;
        if (i <= 1) break;
        const std::size_t k = i - 1;
        ++a[k];
        prefix_max[k] = std::max(prefix_max[k - 1], a[k]);
        for (std::size_t j = k + 1; j < n; ++j) {
            a[j] = 0;
            prefix_max[j] = prefix_max[k];
        }
    }
    space.complete = true;
    space.stats.nodes_enumeration = visited;
    space.stats.seconds = seconds_since(start);
    return space;
}

double lower_bound(const SignedGraph& g, std::span<const Label> prefix) {
    if (prefix.size() > g.n()) throw DimensionError("prefix is longer than the vertex count");
    const SearchModel m = build_model(g, identity_order(g.n()));
    SearchState state(m);
    for (Label c : prefix) {
        if (c > state.modules()) throw ParameterError("prefix is not a restricted-growth string");
        state.push(c);
    }
    return state.bound();
}

}  // namespace ccspace
