#pragma once

// Feynman multigraphs and their spanning trees / spanning 2-forests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmrep/errors.hpp"
#include "cmrep/rational.hpp"

namespace cmrep {

struct Line {
    int id = 0;  // 1..L
    std::string from;
    std::string to;
    Rational mass2 = 0;

    bool is_self_loop() const { return from == to; }
};

struct ExternalLeg {
    std::string vertex;
    std::string label;
};

/// One side of a bipartition of the external legs, tagged with its invariant symbol.
struct InvariantEntry {
    std::vector<std::string> legs;
    std::string symbol;
};

/// Disjoint-set forest over vertex indices.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    /// Returns false when a and b were already joined.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        return true;
    }

    std::size_t components() const { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_;
};

class FeynmanGraph {
public:
    FeynmanGraph() = default;

    /// Validates everything except connectivity, which is checked by the
    /// operations that need it (so the error can name the components).
    FeynmanGraph(std::vector<std::string> vertices, std::vector<Line> lines,
                 std::vector<ExternalLeg> legs = {}, std::vector<InvariantEntry> invariants = {})
        : vertices_(std::move(vertices)), lines_(std::move(lines)), legs_(std::move(legs)) {
        if (vertices_.empty()) throw ValidationError("graph has no vertices");
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!index_.emplace(vertices_[i], i).second)
                throw ValidationError("duplicate vertex '" + vertices_[i] + "'");
        }
        std::sort(lines_.begin(), lines_.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < lines_.size(); ++i) {
            const auto& l = lines_[i];
            if (l.id != static_cast<int>(i) + 1)
                throw ValidationError("line ids must be 1..L without gaps (found " + std::to_string(l.id) + ")");
            if (!index_.count(l.from) || !index_.count(l.to))
                throw ValidationError("line " + std::to_string(l.id) + " has an undeclared endpoint");
            if (l.mass2 < 0) throw ValidationError("line " + std::to_string(l.id) + " has negative mass2");
        }
        std::set<std::string> labels;
        for (const auto& leg : legs_) {
            if (!index_.count(leg.vertex))
                throw ValidationError("external leg '" + leg.label + "' attached to undeclared vertex");
            if (!labels.insert(leg.label).second)
                throw ValidationError("duplicate external leg label '" + leg.label + "'");
        }
        for (auto& inv : invariants) {
            for (const auto& l : inv.legs) {
                if (!labels.count(l))
                    throw ValidationError("invariant '" + inv.symbol + "' references unknown leg '" + l + "'");
            }
            auto key = canonical_side(inv.legs);
            if (key.empty())
                throw ValidationError("invariant '" + inv.symbol + "' names a trivial bipartition");
            if (!invariants_.emplace(key, inv.symbol).second)
                throw ValidationError("bipartition of invariant '" + inv.symbol + "' declared twice");
        }
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Line>& lines() const { return lines_; }
    const std::vector<ExternalLeg>& external_legs() const { return legs_; }
    std::size_t num_lines() const { return lines_.size(); }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t vertex_index(const std::string& v) const { return index_.at(v); }

    std::vector<InvariantEntry> invariants() const {
        std::vector<InvariantEntry> out;
        for (const auto& [legs, sym] : invariants_) out.push_back({legs, sym});
        return out;
    }

    /// Vertex components using only the lines flagged in `use_line`.
    std::vector<std::vector<std::string>> components(const std::vector<bool>& use_line) const {
        UnionFind uf(vertices_.size());
        for (std::size_t i = 0; i < lines_.size(); ++i) {
            if (use_line[i]) uf.unite(index_.at(lines_[i].from), index_.at(lines_[i].to));
        }
        std::map<std::size_t, std::vector<std::string>> groups;
        for (std::size_t v = 0; v < vertices_.size(); ++v) groups[uf.find(v)].push_back(vertices_[v]);
        std::vector<std::vector<std::string>> out;
        for (auto& [root, members] : groups) out.push_back(std::move(members));
        std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
            return index_.at(a.front()) < index_.at(b.front());
        });
        return out;
    }

    std::vector<std::vector<std::string>> components() const {
        return components(std::vector<bool>(lines_.size(), true));
    }

    bool is_connected() const { return components().size() == 1; }

    void require_connected() const {
        auto comps = components();
        if (comps.size() != 1) throw DisconnectedGraphError(std::move(comps));
    }

    /// Invariant symbol for the external-leg bipartition induced by a vertex
    /// split. Returns "" when one side carries no legs (zero momentum transfer)
    /// and nullopt when the bipartition is nontrivial but undeclared.
    std::optional<std::string> invariant_for_split(const std::vector<std::string>& side_vertices) const {
        std::set<std::string> side(side_vertices.begin(), side_vertices.end());
        std::vector<std::string> legs_on_side;
        for (const auto& leg : legs_) {
            if (side.count(leg.vertex)) legs_on_side.push_back(leg.label);
        }
        auto key = canonical_side(legs_on_side);
        if (key.empty()) return std::string{};
        auto it = invariants_.find(key);
        if (it == invariants_.end()) return std::nullopt;
        return it->second;
    }

    /// Canonical key of a bipartition given one side: the side that contains
    /// the smallest leg label, sorted. Empty when the split is trivial.
    std::vector<std::string> canonical_side(std::vector<std::string> side) const {
        std::vector<std::string> all;
        for (const auto& leg : legs_) all.push_back(leg.label);
        std::sort(all.begin(), all.end());
        std::sort(side.begin(), side.end());
        side.erase(std::unique(side.begin(), side.end()), side.end());
        if (side.empty() || side.size() == all.size()) return {};
        if (side.front() == all.front()) return side;
        std::vector<std::string> other;
        std::set_difference(all.begin(), all.end(), side.begin(), side.end(), std::back_inserter(other));
        return other;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Line> lines_;
    std::vector<ExternalLeg> legs_;
    std::map<std::string, std::size_t> index_;
    std::map<std::vector<std::string>, std::string> invariants_;
};

enum class TreeKind { one_tree, two_tree };

struct TreeSet {
    TreeKind kind = TreeKind::one_tree;
    std::vector<int> lines;  // sorted line ids
    // Two-trees only: vertex bipartition, side_a holds the first declared vertex.
    std::vector<std::string> side_a;
    std::vector<std::string> side_b;

    bool contains(int line_id) const { return std::binary_search(lines.begin(), lines.end(), line_id); }
};

namespace detail {

// Above this many lines enumeration switches from the subset scan to
// contraction/deletion.
inline constexpr std::size_t kSubsetScanMaxLines = 12;

inline std::vector<std::pair<std::size_t, std::size_t>> endpoints(const FeynmanGraph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& l : g.lines()) ends.emplace_back(g.vertex_index(l.from), g.vertex_index(l.to));
    return ends;
}

inline std::vector<int> ids_from_mask(std::uint64_t mask, std::size_t L) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < L; ++i) {
        if (mask >> i & 1u) ids.push_back(static_cast<int>(i) + 1);
    }
    return ids;
}

}  // namespace detail

/// Spanning trees by scanning every (V-1)-subset of lines.
inline std::vector<std::vector<int>> spanning_trees_by_subset_scan(const FeynmanGraph& g) {
    const std::size_t L = g.num_lines(), V = g.num_vertices();
    if (L >= 63) throw ValidationError("subset scan limited to fewer than 63 lines");
    auto ends = detail::endpoints(g);
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << L); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != V - 1) continue;
        UnionFind uf(V);
        bool acyclic = true;
        for (std::size_t i = 0; i < L && acyclic; ++i) {
            if (mask >> i & 1u) acyclic = uf.unite(ends[i].first, ends[i].second);
        }
        if (acyclic && uf.components() == 1) out.push_back(detail::ids_from_mask(mask, L));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Spanning trees by recursive contraction (take the line) / deletion (skip it),
/// pruning deletions that would disconnect the remaining graph.
inline std::vector<std::vector<int>> spanning_trees_by_contraction(const FeynmanGraph& g) {
    const std::size_t L = g.num_lines(), V = g.num_vertices();
    auto ends = detail::endpoints(g);
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;

    // Can the chosen lines plus lines [from, L) still connect every vertex?
    auto still_spanning = [&](std::size_t from) {
        UnionFind uf(V);
        for (int id : chosen) uf.unite(ends[id - 1].first, ends[id - 1].second);
        for (std::size_t i = from; i < L && uf.components() > 1; ++i) uf.unite(ends[i].first, ends[i].second);
        return uf.components() == 1;
    };

    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (chosen.size() == V - 1) {
            out.push_back(chosen);
            return;
        }
        if (i == L) return;
        UnionFind uf(V);
        for (int id : chosen) uf.unite(ends[id - 1].first, ends[id - 1].second);
        if (uf.find(ends[i].first) != uf.find(ends[i].second)) {
            chosen.push_back(static_cast<int>(i) + 1);
            self(self, i + 1);
            chosen.pop_back();
        }
        if (still_spanning(i + 1)) self(self, i + 1);
    };
    if (still_spanning(0)) recurse(recurse, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// All spanning trees, in lexicographic order of their sorted line-id sets.
/// Self-loops never belong to a tree; parallel lines give distinct trees.
inline std::vector<TreeSet> spanning_trees(const FeynmanGraph& g) {
    g.require_connected();
    auto sets = g.num_lines() > detail::kSubsetScanMaxLines ? spanning_trees_by_contraction(g)
                                                            : spanning_trees_by_subset_scan(g);
    std::vector<TreeSet> out;
    out.reserve(sets.size());
    for (auto& s : sets) out.push_back({TreeKind::one_tree, std::move(s), {}, {}});
    return out;
}

/// All spanning 2-forests with their vertex bipartitions. Every 2-forest of a
/// connected graph is a spanning tree minus one line, which is how they are
/// generated. A single-vertex graph has none.
inline std::vector<TreeSet> two_trees(const FeynmanGraph& g) {
    g.require_connected();
    if (g.num_vertices() < 2) return {};
    std::set<std::vector<int>> forests;
    for (const auto& tree : spanning_trees(g)) {
        for (std::size_t drop = 0; drop < tree.lines.size(); ++drop) {
            std::vector<int> f;
            for (std::size_t k = 0; k < tree.lines.size(); ++k) {
                if (k != drop) f.push_back(tree.lines[k]);
            }
            forests.insert(std::move(f));
        }
    }
    std::vector<TreeSet> out;
    for (const auto& f : forests) {
        std::vector<bool> use(g.num_lines(), false);
        for (int id : f) use[id - 1] = true;
        auto comps = g.components(use);
        out.push_back({TreeKind::two_tree, f, comps.at(0), comps.at(1)});
    }
    return out;
}

}  // namespace cmrep
