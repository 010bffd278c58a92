#include "ccspace/core_parts.hpp"

#include <algorithm>
#include <string>

#include "ccspace/errors.hpp"

namespace ccspace {

ConsensusMatrix consensus(std::span<const Partition> solutions) {
    if (solutions.empty()) throw ParameterError("consensus needs at least one solution");
    const std::size_t n = solutions.front().size();
    ConsensusMatrix c(n, solutions.size());
    for (const auto& p : solutions) {
        if (p.size() != n) throw DimensionError("solutions have different vertex counts");
        for (const auto& module : p.modules())
            for (std::size_t a = 0; a < module.size(); ++a) {
                c.increment(module[a], module[a]);
                for (std::size_t b = a + 1; b < module.size(); ++b) {
                    c.increment(module[a], module[b]);
                    c.increment(module[b], module[a]);
                }
            }
    }
    return c;
}

namespace {

// Maximum-weight clique by Bron-Kerbosch with pivoting; every maximal clique is visited once.
class CliqueSearch {
public:
    CliqueSearch(const std::vector<std::vector<bool>>& adjacent, const std::vector<std::vector<std::size_t>>& groups)
        : adjacent_(adjacent), groups_(groups) {}

    void run() {
        std::vector<std::size_t> candidates(groups_.size());
        for (std::size_t i = 0; i < groups_.size(); ++i) candidates[i] = i;
        std::vector<std::size_t> current;
        expand(current, candidates, {});
    }

    const std::vector<std::size_t>& best() const noexcept { return best_groups_; }
    bool tie() const noexcept { return best_count_ > 1; }

private:
    void expand(std::vector<std::size_t>& current, std::vector<std::size_t> candidates,
                std::vector<std::size_t> excluded) {
        if (candidates.empty()) {
            if (excluded.empty()) offer(current);
            return;
        }
        // Pivot: the vertex of candidates or excluded with most neighbours among candidates.
        std::size_t pivot = candidates.front();
        std::size_t pivot_degree = 0;
        for (const auto* pool : {&candidates, &excluded})
            for (std::size_t u : *pool) {
                std::size_t degree = 0;
                for (std::size_t v : candidates) degree += adjacent_[u][v];
                if (degree > pivot_degree || (degree == pivot_degree && u < pivot)) {
                    pivot = u;
                    pivot_degree = degree;
                }
            }
        std::vector<std::size_t> branch;
        for (std::size_t v : candidates)
            if (!adjacent_[pivot][v]) branch.push_back(v);
        for (std::size_t v : branch) {
            std::vector<std::size_t> next_candidates;
            std::vector<std::size_t> next_excluded;
            for (std::size_t u : candidates)
                if (adjacent_[v][u]) next_candidates.push_back(u);
            for (std::size_t u : excluded)
                if (adjacent_[v][u]) next_excluded.push_back(u);
            current.push_back(v);
            expand(current, std::move(next_candidates), std::move(next_excluded));
            current.pop_back();
            candidates.erase(std::find(candidates.begin(), candidates.end(), v));
            excluded.push_back(v);
        }
    }

    void offer(const std::vector<std::size_t>& clique) {
        std::vector<std::size_t> vertices;
        for (std::size_t g : clique) vertices.insert(vertices.end(), groups_[g].begin(), groups_[g].end());
        std::sort(vertices.begin(), vertices.end());
        if (vertices.size() > best_vertices_.size()) {
            best_vertices_ = std::move(vertices);
            best_groups_ = clique;
            best_count_ = 1;
        } else if (vertices.size() == best_vertices_.size()) {
            ++best_count_;
            if (vertices < best_vertices_) {
                best_vertices_ = std::move(vertices);
                best_groups_ = clique;
            }
        }
    }

    const std::vector<std::vector<bool>>& adjacent_;
    const std::vector<std::vector<std::size_t>>& groups_;
    std::vector<std::size_t> best_groups_;
    std::vector<std::size_t> best_vertices_;
    std::size_t best_count_ = 0;
};

}  // namespace

CorePart core_part(std::span<const Partition> solutions) {
    const ConsensusMatrix c = consensus(solutions);
    const std::size_t n = c.n();

    // Always-together is an equivalence relation, so each vertex joins the group of the first
    // vertex it is always together with.
    std::vector<std::size_t> group_of(n);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        while (j < i && !c.always_together(j, i)) ++j;
        if (j == i) {
            group_of[i] = groups.size();
            groups.push_back({i});
        } else {
            group_of[i] = group_of[j];
            groups[group_of[j]].push_back(i);
        }
    }

    std::vector<std::vector<bool>> apart(groups.size(), std::vector<bool>(groups.size(), false));
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t b = a + 1; b < groups.size(); ++b)
            apart[a][b] = apart[b][a] = c.always_apart(groups[a].front(), groups[b].front());

    CliqueSearch search(apart, groups);
    search.run();

    CorePart core;
    core.tie = search.tie();
    auto chosen = search.best();
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t g : chosen) {
        core.together_classes.push_back(groups[g]);
        core.vertices.insert(core.vertices.end(), groups[g].begin(), groups[g].end());
    }
    std::sort(core.vertices.begin(), core.vertices.end());
    return core;
}

CoreReport class_core_report(std::span<const Partition> solutions, std::span<const std::size_t> assignment) {
    if (solutions.empty()) throw ParameterError("core report needs at least one solution");
    if (assignment.size() != solutions.size())
        throw DimensionError("assignment has " + std::to_string(assignment.size()) + " entries for " +
                             std::to_string(solutions.size()) + " solutions");
    std::size_t k = 0;
    for (auto c : assignment) k = std::max(k, c + 1);
    std::vector<std::vector<Partition>> members(k);
    for (std::size_t i = 0; i < solutions.size(); ++i) members[assignment[i]].push_back(solutions[i]);

    CoreReport report;
    report.n = solutions.front().size();
    for (const auto& m : members) {
        if (m.empty()) throw ParameterError("class labels must be contiguous with no empty class");
        report.classes.push_back(core_part(m));
        report.class_fractions.push_back(report.classes.back().fraction(report.n));
    }
    report.overall = core_part(solutions);
    report.overall_fraction = report.overall.fraction(report.n);
    return report;
}

CoreReport class_core_report(const SolutionSpace& space, const ClusteringResult& clustering) {
    return class_core_report(std::span<const Partition>(space.solutions),
                             std::span<const std::size_t>(clustering.assignment));
}

}  // namespace ccspace
